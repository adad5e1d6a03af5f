//! Exhaustive and randomized checks of every invariant the engine relies on,
//! grouped into named suites.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::board::{richardson_nonempty, BranchKind};
use crate::error::{Error, Result};
use crate::filling::{
    enumerate_puzzles, structure_constants, structure_constants_with, trace, Coeff, Enumerator,
    StandardWeights, Theory, TraceNode, WeightTable,
};
use crate::interval::{essential_conditions, window_ranks, DotSet, RankMatrix};
use crate::oracle::lr_oracle;
use crate::poly::lowest_form;
use crate::words::Word;

/// Largest board size the verifier accepts.
pub const MAX_N: usize = 7;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Prime used for the random-matrix checks; small so rank drops are common.
pub const SAMPLE_PRIME: u64 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    /// Inputs that reproduce the failure.
    pub case: String,
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: expected {}, got {}", self.case, self.expected, self.actual)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub cases: usize,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} cases, {} failures)", self.suite, self.cases, self.failures.len())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Pink dots, boring invariance, covers, K-meets and codimension along
    /// every degeneration tree.
    Geometry,
    /// Initial paths are Richardson, final paths are opposite Schubert.
    Identifications,
    Inversion,
    Hall,
    Essential,
    Specialization,
    Commutativity,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Geometry,
        Suite::Identifications,
        Suite::Inversion,
        Suite::Hall,
        Suite::Essential,
        Suite::Specialization,
        Suite::Commutativity,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Geometry => "geometry",
            Suite::Identifications => "identifications",
            Suite::Inversion => "inversion",
            Suite::Hall => "hall",
            Suite::Essential => "essential",
            Suite::Specialization => "specialization",
            Suite::Commutativity => "commutativity",
            Suite::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::Malformed(format!("unknown suite {s:?} (expected one of {})", names.join(", ")))
            })
    }
}

#[derive(Clone, Copy)]
pub struct Config<'a> {
    pub max_n: usize,
    pub seed: u64,
    /// Random matrices drawn per dot set in the essential suite.
    pub samples: usize,
    /// Largest `k` used by the oracle suite.
    pub max_k: Option<usize>,
    /// Weight table checked by the specialization suite.
    pub weights: &'a dyn WeightTable,
}

impl Config<'static> {
    pub fn new(max_n: usize) -> Config<'static> {
        Config {
            max_n,
            seed: DEFAULT_SEED,
            samples: 1000,
            max_k: None,
            weights: &StandardWeights,
        }
    }
}

impl fmt::Debug for Config<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Config")
            .field("max_n", &self.max_n)
            .field("seed", &self.seed)
            .field("samples", &self.samples)
            .field("max_k", &self.max_k)
            .finish_non_exhaustive()
    }
}

/// Every suite at the default configuration.
pub fn verify_suite(max_n: usize) -> Result<Vec<Report>> {
    let cfg = Config::new(max_n);
    Suite::ALL.iter().map(|&s| run_suite(s, &cfg)).collect()
}

pub fn run_suite(suite: Suite, cfg: &Config<'_>) -> Result<Report> {
    if cfg.max_n > MAX_N {
        return Err(Error::ResourceBound(format!(
            "max n {} exceeds the verifier bound {MAX_N}",
            cfg.max_n
        )));
    }
    let mut out = match suite {
        Suite::Geometry => geometry(cfg),
        Suite::Identifications => identifications(cfg),
        Suite::Inversion => inversion(cfg),
        Suite::Hall => hall(cfg),
        Suite::Essential => essential(cfg),
        Suite::Specialization => specialization(cfg),
        Suite::Commutativity => commutativity(cfg),
        Suite::Oracle => oracle(cfg),
    }?;
    out.failures.sort_by(|a, b| (&a.case, &a.expected).cmp(&(&b.case, &b.expected)));
    Ok(out)
}

type Partial = (usize, Vec<Failure>);

fn fail(case: impl Into<String>, expected: impl fmt::Display, actual: impl fmt::Display) -> Failure {
    Failure {
        case: case.into(),
        expected: expected.to_string(),
        actual: actual.to_string(),
    }
}

fn collect(suite: Suite, parts: Result<Vec<Partial>>) -> Result<Report> {
    let (cases, failures) = parts?
        .into_iter()
        .fold((0, Vec::new()), |(c, mut f), (c2, f2)| {
            f.extend(f2);
            (c + c2, f)
        });
    Ok(Report { suite, cases, failures })
}

fn all_pairs(max_n: usize) -> Vec<(Word, Word)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for k in 0..=n {
            let words = Word::all(n, k);
            for mu in &words {
                for nu in &words {
                    out.push((mu.clone(), nu.clone()));
                }
            }
        }
    }
    out
}

fn nonempty_pairs(max_n: usize) -> Vec<(Word, Word)> {
    all_pairs(max_n)
        .into_iter()
        .filter(|(mu, nu)| richardson_nonempty(mu, nu))
        .collect()
}

fn all_dotsets(max_n: usize) -> Vec<DotSet> {
    (1..=max_n)
        .flat_map(|n| (0..=n).flat_map(move |m| DotSet::all_of_size(n, m)))
        .collect()
}

fn pair_case(mu: &Word, nu: &Word) -> String {
    format!("mu={mu} nu={nu}")
}

fn geometry(cfg: &Config<'_>) -> Result<Report> {
    let parts = nonempty_pairs(cfg.max_n)
        .par_iter()
        .map(|(mu, nu)| {
            let r = trace(mu, nu, true)?;
            let failures = r
                .failures
                .iter()
                .map(|f| fail(pair_case(mu, nu), "no violated relation", f))
                .collect();
            Ok((r.nodes, failures))
        })
        .collect();
    collect(Suite::Geometry, parts)
}

fn leaves<'a>(node: &'a TraceNode, out: &mut Vec<&'a TraceNode>) {
    if node.lambda.is_some() {
        out.push(node);
    }
    for c in &node.children {
        leaves(c, out);
    }
}

fn identifications(cfg: &Config<'_>) -> Result<Report> {
    let parts = nonempty_pairs(cfg.max_n)
        .par_iter()
        .map(|(mu, nu)| {
            let r = trace(mu, nu, false)?;
            let case = pair_case(mu, nu);
            let mut failures = Vec::new();
            let root = &r.root;
            if root.envelope != (mu.clone(), nu.clone()) || root.codim != 0 {
                failures.push(fail(
                    format!("{case} initial path"),
                    format!("envelope ({mu}, {nu}) codim 0"),
                    format!("envelope ({}, {}) codim {}", root.envelope.0, root.envelope.1, root.codim),
                ));
            }
            let mut finals = Vec::new();
            leaves(root, &mut finals);
            for leaf in &finals {
                let lambda = leaf.lambda.as_ref().expect("leaf has a word");
                if let Some(c) = leaf.conditions.iter().find(|c| c.cell.0 != 1) {
                    failures.push(fail(
                        format!("{case} final path {}", leaf.path),
                        "first-row conditions only",
                        c,
                    ));
                }
                if leaf.envelope.1 != *lambda {
                    failures.push(fail(
                        format!("{case} final path {}", leaf.path),
                        format!("envelope column word {lambda}"),
                        &leaf.envelope.1,
                    ));
                }
            }
            Ok((1 + finals.len(), failures))
        })
        .collect();
    collect(Suite::Identifications, parts)
}

fn inversion(cfg: &Config<'_>) -> Result<Report> {
    let parts = all_pairs(cfg.max_n)
        .par_iter()
        .map(|(mu, nu)| {
            let puzzles = enumerate_puzzles(mu, nu, None, None)?;
            let failures = puzzles
                .iter()
                .filter_map(|p| {
                    let lhs = nu.inversions() + p.count_kind(BranchKind::Equivariant);
                    let rhs = p.lambda.inversions() + mu.inversions() + p.count_kind(BranchKind::TopK);
                    (lhs != rhs).then(|| {
                        fail(
                            format!("{} lambda={}", pair_case(mu, nu), p.lambda),
                            format!("|nu| + #equivariant = {lhs}"),
                            format!("|lambda| + |mu| + #topK = {rhs}"),
                        )
                    })
                })
                .collect();
            Ok((puzzles.len(), failures))
        })
        .collect();
    collect(Suite::Inversion, parts)
}

fn hall(cfg: &Config<'_>) -> Result<Report> {
    let parts = all_dotsets(cfg.max_n)
        .par_iter()
        .map(|d| {
            let k = d.n() - d.len();
            let mut failures = Vec::new();
            let words = Word::all(d.n(), k);
            for w in &words {
                let fixed = d.fixed_point_in(w)?;
                let matched = d.matching_exists(w)?;
                if fixed != matched {
                    failures.push(fail(
                        format!("n={} dots={d} word={w}", d.n()),
                        format!("fixed point {fixed}"),
                        format!("matching {matched}"),
                    ));
                }
            }
            Ok((words.len(), failures))
        })
        .collect();
    collect(Suite::Hall, parts)
}

/// `r` is bounded by `bound` everywhere exactly when it is at the essential
/// cells of `d`.
fn essential_agrees(d: &DotSet, cells: &[(usize, usize)], bound: &RankMatrix, r: &RankMatrix) -> Option<Failure> {
    let full = bound.admits(r);
    let ess = bound.admits_at(r, cells);
    (full != ess).then(|| {
        fail(
            format!("n={} dots={d} ranks=[{}]", d.n(), r.to_string().replace('\n', " | ")),
            format!("all conditions {full}"),
            format!("essential conditions {ess}"),
        )
    })
}

/// Sparse `rows x n` matrix over `F_p`; sparsity makes rank drops common.
fn random_matrix(rng: &mut impl Rng, rows: usize, n: usize) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|_| {
            (0..n)
                .map(|_| if rng.random_bool(0.4) { rng.random_range(1..SAMPLE_PRIME as i64) } else { 0 })
                .collect()
        })
        .collect()
}

fn essential(cfg: &Config<'_>) -> Result<Report> {
    let dotsets = all_dotsets(cfg.max_n);
    let by_n: BTreeMap<usize, Vec<RankMatrix>> = dotsets.iter().fold(BTreeMap::new(), |mut m, d| {
        m.entry(d.n()).or_default().push(RankMatrix::from_dots(d));
        m
    });
    let parts = dotsets
        .par_iter()
        .enumerate()
        .map(|(idx, d)| {
            let n = d.n();
            let k = n - d.len();
            let bound = RankMatrix::from_dots(d);
            let cells: Vec<_> = essential_conditions(d).iter().map(|c| c.cell).collect();
            let mut failures = Vec::new();
            let mut cases = 0;

            // every interval rank matrix of the same size
            for r in &by_n[&n] {
                cases += 1;
                failures.extend(essential_agrees(d, &cells, &bound, r));
            }

            // random k x n matrices over a small field
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (idx as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            for _ in 0..cfg.samples {
                let r = window_ranks(&random_matrix(&mut rng, k, n), n, Some(SAMPLE_PRIME));
                cases += 1;
                failures.extend(essential_agrees(d, &cells, &bound, &r));
            }
            Ok((cases, failures))
        })
        .collect();
    collect(Suite::Essential, parts)
}

fn constants(t: Theory, mu: &Word, nu: &Word, weights: &dyn WeightTable) -> Result<BTreeMap<Word, Coeff>> {
    Ok(structure_constants_with(t, mu, nu, Enumerator::new(Some(t)).with_weights(weights))?.coefficients)
}

fn specialization(cfg: &Config<'_>) -> Result<Report> {
    let parts = all_pairs(cfg.max_n)
        .par_iter()
        .map(|(mu, nu)| {
            let n = mu.len();
            let kt = constants(Theory::KT, mu, nu, cfg.weights)?;
            let k = structure_constants(Theory::K, mu, nu)?;
            let ht = structure_constants(Theory::HT, mu, nu)?;
            let h = structure_constants(Theory::H, mu, nu)?;
            let case = pair_case(mu, nu);
            let mut failures = Vec::new();
            let mut cases = 0;
            for lambda in Word::all(n, mu.ones()) {
                cases += 1;
                let get = |m: &BTreeMap<Word, Coeff>, t: Theory| m.get(&lambda).cloned().unwrap_or_else(|| Coeff::zero(t, n));
                let (c_kt, c_k, c_ht, c_h) = (get(&kt, Theory::KT), get(&k, Theory::K), get(&ht, Theory::HT), get(&h, Theory::H));
                let at = |what: &str| format!("{case} lambda={lambda} {what}");

                let kt_poly = c_kt.as_laurent().expect("laurent");
                let k_val = c_k.as_poly().expect("poly").constant_term();
                if kt_poly.eval_at_one() != k_val {
                    failures.push(fail(at("K_T at 1"), &k_val, kt_poly.eval_at_one()));
                }

                let d = (lambda.inversions() + mu.inversions()) as i64 - nu.inversions() as i64;
                let ht_poly = c_ht.as_poly().expect("poly");
                if d < 0 {
                    // K-theory corrections live here; only the cohomology must vanish
                    if !ht_poly.is_zero() {
                        failures.push(fail(at("H_T in negative degree"), "0", ht_poly));
                    }
                } else {
                    match lowest_form(kt_poly, d as u32) {
                        Ok(low) if low == *ht_poly => {}
                        Ok(low) => failures.push(fail(at("lowest form of K_T"), ht_poly, low)),
                        Err(e) => failures.push(fail(at("lowest form of K_T"), ht_poly, e)),
                    }
                }

                let h_val = c_h.as_poly().expect("poly").constant_term();
                if ht_poly.y_to_zero() != h_val {
                    failures.push(fail(at("H_T at y=0"), &h_val, ht_poly.y_to_zero()));
                }
            }
            Ok((cases, failures))
        })
        .collect();
    collect(Suite::Specialization, parts)
}

fn commutativity(cfg: &Config<'_>) -> Result<Report> {
    let mut parts = Vec::new();
    for t in [Theory::H, Theory::HT, Theory::K] {
        let pairs = all_pairs(cfg.max_n);
        let table: BTreeMap<(Word, Word), BTreeMap<Word, Coeff>> = pairs
            .par_iter()
            .map(|(mu, nu)| Ok(((mu.clone(), nu.clone()), structure_constants(t, mu, nu)?)))
            .collect::<Result<_>>()?;
        let part: Vec<Partial> = pairs
            .par_iter()
            .map(|(mu, nu)| {
                let n = mu.len();
                let zero = Coeff::zero(t, n);
                let mut failures = Vec::new();
                let mut cases = 0;
                for lambda in Word::all(n, mu.ones()) {
                    cases += 1;
                    let a = table[&(mu.clone(), nu.clone())].get(&lambda).unwrap_or(&zero);
                    let b = table[&(lambda.clone(), nu.clone())].get(mu).unwrap_or(&zero);
                    if a != b {
                        failures.push(fail(
                            format!("{t} lambda={lambda} mu={mu} nu={nu}"),
                            format!("c[mu, nu][lambda] = {a}"),
                            format!("c[lambda, nu][mu] = {b}"),
                        ));
                    }
                }
                (cases, failures)
            })
            .collect();
        parts.extend(part);
    }
    collect(Suite::Commutativity, Ok(parts))
}

fn oracle(cfg: &Config<'_>) -> Result<Report> {
    let pairs: Vec<_> = all_pairs(cfg.max_n)
        .into_iter()
        .filter(|(mu, _)| cfg.max_k.is_none_or(|k| mu.ones() <= k))
        .collect();
    let parts = pairs
        .par_iter()
        .map(|(mu, nu)| {
            let n = mu.len();
            let h = structure_constants(Theory::H, mu, nu)?;
            let mut failures = Vec::new();
            let mut cases = 0;
            for lambda in Word::all(n, mu.ones()) {
                let got = h
                    .get(&lambda)
                    .map(|c| c.as_poly().expect("poly").clone())
                    .unwrap_or_else(|| crate::poly::Poly::zero(n));
                let matches_degree = lambda.inversions() + mu.inversions() == nu.inversions();
                if !matches_degree {
                    if !got.is_zero() {
                        failures.push(fail(format!("lambda={lambda} {}", pair_case(mu, nu)), "0 (degree)", &got));
                    }
                    continue;
                }
                cases += 1;
                let want = lr_oracle(&lambda, mu, nu);
                if got != crate::poly::Poly::constant(n, want as i64) {
                    failures.push(fail(format!("lambda={lambda} {}", pair_case(mu, nu)), want, &got));
                }
            }
            Ok((cases, failures))
        })
        .collect();
    collect(Suite::Oracle, parts)
}
