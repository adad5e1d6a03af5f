//! One line per acceptance criterion; exits nonzero if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use puzzle_core::filling::{structure_constants, Coeff, Theory};
use puzzle_core::poly::{lowest_form, LPoly, Poly};
use puzzle_core::verify::{run_suite, Config, Report, Suite};
use puzzle_core::Word;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn rendered(t: Theory) -> BTreeMap<String, String> {
    structure_constants(t, &w("0101"), &w("1010"))
        .unwrap()
        .into_iter()
        .map(|(l, c)| (l.to_string(), c.render()))
        .collect()
}

fn table(entries: &[(&str, &str)]) -> BTreeMap<String, String> {
    entries.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    if took <= limit {
        Ok(took)
    } else {
        Err(format!("took {took:.2?}, limit {limit:?}"))
    }
}

fn suites(max_n: usize, list: &[Suite], tweak: impl Fn(Config<'static>) -> Config<'static>) -> Outcome {
    let cfg = tweak(Config::new(max_n));
    let mut notes = Vec::new();
    for &s in list {
        let r: Report = run_suite(s, &cfg).map_err(|e| e.to_string())?;
        if !r.passed() {
            let first: Vec<String> = r.failures.iter().take(3).map(ToString::to_string).collect();
            return Err(format!("{r}; first: {}", first.join(" / ")));
        }
        notes.push(format!("{} {} cases", s, r.cases));
    }
    Ok(notes.join(", "))
}

fn worked_example() -> Outcome {
    let start = Instant::now();
    let h = rendered(Theory::H);
    let ht = rendered(Theory::HT);
    let k = rendered(Theory::K);
    let took = within(Duration::from_secs(1), start)?;
    let checks = [
        ("H", h, table(&[("0110", "1"), ("1001", "1")])),
        ("H_T", ht, table(&[("0110", "1"), ("1001", "1"), ("1010", "-1*y1 + 1*y4")])),
        ("K", k, table(&[("0101", "-1"), ("0110", "1"), ("1001", "1")])),
    ];
    for (name, got, want) in checks {
        if got != want {
            return Err(format!("{name}: got {got:?}, want {want:?}"));
        }
    }
    Ok(format!("H, H_T, K exact in {took:.2?}"))
}

fn kt_desk_check() -> Outcome {
    let (mu, nu) = (w("0101"), w("1010"));
    let kt = structure_constants(Theory::KT, &mu, &nu).map_err(|e| e.to_string())?;
    let k = structure_constants(Theory::K, &mu, &nu).map_err(|e| e.to_string())?;
    let ht = structure_constants(Theory::HT, &mu, &nu).map_err(|e| e.to_string())?;
    for lambda in Word::all(4, 2) {
        let get_l = |m: &BTreeMap<Word, Coeff>| m.get(&lambda).and_then(|c| c.as_laurent().cloned()).unwrap_or_else(|| LPoly::zero(4));
        let get_p = |m: &BTreeMap<Word, Coeff>| m.get(&lambda).and_then(|c| c.as_poly().cloned()).unwrap_or_else(|| Poly::zero(4));
        let (c_kt, c_k, c_ht) = (get_l(&kt), get_p(&k), get_p(&ht));
        if c_kt.eval_at_one() != c_k.constant_term() {
            return Err(format!("(a) lambda={lambda}: K_T at 1 is {}, K is {c_k}", c_kt.eval_at_one()));
        }
        let d = (lambda.inversions() + mu.inversions()) as i64 - nu.inversions() as i64;
        if d >= 0 {
            let low = lowest_form(&c_kt, d as u32).map_err(|e| e.to_string())?;
            if low != c_ht {
                return Err(format!("(b) lambda={lambda}: lowest form {low}, H_T {c_ht}"));
            }
        } else if !c_ht.is_zero() {
            return Err(format!("(b) lambda={lambda}: H_T {c_ht} in negative degree"));
        }
    }
    let top = kt.get(&w("0101")).map(Coeff::render).unwrap_or_default();
    let want = (-LPoly::exp_root(4, 1, 4)).render();
    if top != want {
        return Err(format!("(c) 0101 coefficient {top}, want {want}"));
    }
    Ok(format!("(a) (b) hold; 0101 -> {top}"))
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("worked example H, H_T, K", Box::new(worked_example)),
        ("K_T specializations of the worked example", Box::new(kt_desk_check)),
        (
            "H puzzle counts equal LR coefficients, n <= 6, k <= 3",
            Box::new(|| {
                let start = Instant::now();
                let r = suites(6, &[Suite::Oracle], |c| Config { max_k: Some(3), ..c })?;
                let took = within(Duration::from_secs(60), start)?;
                Ok(format!("{r} in {took:.2?}"))
            }),
        ),
        ("inversion count identity on every puzzle, n <= 6", Box::new(|| suites(6, &[Suite::Inversion], |c| c))),
        ("K_T -> K, K_T -> H_T, H_T -> H, n <= 5", Box::new(|| suites(5, &[Suite::Specialization], |c| c))),
        ("lambda <-> mu symmetry of H, H_T, K, n <= 5", Box::new(|| suites(5, &[Suite::Commutativity], |c| c))),
        ("geometry along every trace, n <= 5", Box::new(|| suites(5, &[Suite::Geometry], |c| c))),
        (
            "Hall equivalence and essential-set sufficiency, n <= 6",
            Box::new(|| suites(6, &[Suite::Hall, Suite::Essential], |c| c)),
        ),
        ("initial and final path identifications, n <= 5", Box::new(|| suites(5, &[Suite::Identifications], |c| c))),
    ];

    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        match outcome {
            Ok(note) => println!("criterion {}: PASS  {name} [{note}] ({took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} ({took:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
