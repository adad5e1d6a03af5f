//! Interval rank matrices and their dot-set (partial permutation) form.
//!
//! Cells are `(i, j)` with `1 <= i <= j <= n`: row `i`, column `j`. The rank
//! matrix of a dot set bounds the rank of every window of consecutive
//! columns `[i, j]`.

mod covers;
mod linalg;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::Word;

pub use covers::{covers, covers_brute_force};
pub use linalg::{rank_of_matrix, window_ranks};

pub type Cell = (usize, usize);

/// An upper-triangular partial permutation on an `n x n` board.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DotSet {
    n: usize,
    /// Sorted by row.
    dots: Vec<Cell>,
}

impl DotSet {
    pub fn new(n: usize, mut dots: Vec<Cell>) -> Result<DotSet> {
        dots.sort_unstable();
        let mut rows = BTreeSet::new();
        let mut cols = BTreeSet::new();
        for &(i, j) in &dots {
            if !(1 <= i && i <= j && j <= n) {
                return Err(Error::Malformed(format!(
                    "dot ({i},{j}) is not an upper-triangular cell of a {n}x{n} board"
                )));
            }
            if !rows.insert(i) {
                return Err(Error::Malformed(format!("two dots in row {i}")));
            }
            if !cols.insert(j) {
                return Err(Error::Malformed(format!("two dots in column {j}")));
            }
        }
        Ok(DotSet { n, dots })
    }

    pub fn empty(n: usize) -> DotSet {
        DotSet { n, dots: Vec::new() }
    }

    /// Parses `"i1,j1;i2,j2;..."`. The empty string is the empty set.
    pub fn parse(s: &str, n: usize) -> Result<DotSet> {
        let mut dots = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (a, b) = part
                .split_once(',')
                .ok_or_else(|| Error::Malformed(format!("dot {part:?} is not of the form i,j")))?;
            let parse = |x: &str| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Malformed(format!("bad coordinate in dot {part:?}")))
            };
            dots.push((parse(a)?, parse(b)?));
        }
        DotSet::new(n, dots)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dots(&self) -> &[Cell] {
        &self.dots
    }

    pub fn len(&self) -> usize {
        self.dots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dots.is_empty()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.dots.binary_search(&cell).is_ok()
    }

    pub fn row_has_dot(&self, i: usize) -> bool {
        self.dots.iter().any(|&(a, _)| a == i)
    }

    pub fn col_has_dot(&self, j: usize) -> bool {
        self.dots.iter().any(|&(_, b)| b == j)
    }

    /// Number of dots inside the window `[i, j]`, i.e. with `i <= a <= b <= j`.
    pub fn dots_within(&self, i: usize, j: usize) -> usize {
        self.dots
            .iter()
            .filter(|&&(a, b)| i <= a && b <= j)
            .count()
    }

    /// Every dot set on an `n x n` board with exactly `m` dots.
    pub fn all_of_size(n: usize, m: usize) -> Vec<DotSet> {
        fn rec(n: usize, m: usize, row: usize, used: &mut Vec<bool>, cur: &mut Vec<Cell>, out: &mut Vec<DotSet>) {
            if cur.len() == m {
                out.push(DotSet { n, dots: cur.clone() });
                return;
            }
            if row > n || (n - row + 1) < m - cur.len() {
                return;
            }
            rec(n, m, row + 1, used, cur, out);
            for j in row..=n {
                if !used[j] {
                    used[j] = true;
                    cur.push((row, j));
                    rec(n, m, row + 1, used, cur, out);
                    cur.pop();
                    used[j] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(n, m, 1, &mut vec![false; n + 1], &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// Words with one 1 in each dotless row and column respectively.
    pub fn envelope(&self) -> (Word, Word) {
        let rows = (1..=self.n).map(|i| !self.row_has_dot(i)).collect();
        let cols = (1..=self.n).map(|j| !self.col_has_dot(j)).collect();
        (Word::from_bits(rows), Word::from_bits(cols))
    }

    /// Number of dot pairs arranged NE/SW.
    pub fn envelope_codim(&self) -> usize {
        let mut count = 0;
        for (x, &(a, b)) in self.dots.iter().enumerate() {
            for &(a2, b2) in &self.dots[x + 1..] {
                if (a < a2 && b > b2) || (a2 < a && b2 > b) {
                    count += 1;
                }
            }
        }
        count
    }

    /// North-east corners of the diagram left after crossing out dotless
    /// rows and columns and every cell strictly south or west of a dot.
    pub fn essential_set(&self) -> Vec<Cell> {
        let n = self.n;
        let alive = |i: usize, j: usize| -> bool {
            if i < 1 || j > n || i > j {
                return false;
            }
            if !self.row_has_dot(i) || !self.col_has_dot(j) {
                return false;
            }
            !self
                .dots
                .iter()
                .any(|&(a, b)| (b == j && i > a) || (a == i && j < b))
        };
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i..=n {
                if alive(i, j) && !alive(i.wrapping_sub(1), j) && !alive(i, j + 1) {
                    out.push((i, j));
                }
            }
        }
        out.sort_by_key(|&(i, j)| (j, i));
        out
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        if w.len() != self.n {
            return Err(Error::SizeMismatch(format!(
                "word {w} has length {}, board has size {}",
                w.len(),
                self.n
            )));
        }
        if self.len() + w.ones() != self.n {
            return Err(Error::SizeMismatch(format!(
                "{} dots need words with {} ones, {w} has {}",
                self.len(),
                self.n - self.len(),
                w.ones()
            )));
        }
        Ok(())
    }

    /// Whether the coordinate subspace of `w` satisfies every rank bound.
    pub fn fixed_point_in(&self, w: &Word) -> Result<bool> {
        self.check_word(w)?;
        let r = RankMatrix::from_dots(self);
        Ok((1..=self.n).all(|i| (i..=self.n).all(|j| w.window_sum(i, j) as u32 <= r.get(i, j))))
    }

    /// Whether the dots can be matched injectively to zeros of `w`, each dot
    /// `(i, j)` to a zero inside `[i, j]`.
    pub fn matching_exists(&self, w: &Word) -> Result<bool> {
        self.check_word(w)?;
        let zeros = w.zero_positions();
        let mut owner: Vec<Option<usize>> = vec![None; zeros.len()];

        fn augment(
            d: usize,
            dots: &[Cell],
            zeros: &[usize],
            owner: &mut [Option<usize>],
            seen: &mut [bool],
        ) -> bool {
            let (i, j) = dots[d];
            for z in 0..zeros.len() {
                if seen[z] || zeros[z] < i || zeros[z] > j {
                    continue;
                }
                seen[z] = true;
                if owner[z].is_none_or(|o| augment(o, dots, zeros, owner, seen)) {
                    owner[z] = Some(d);
                    return true;
                }
            }
            false
        }

        Ok((0..self.dots.len()).all(|d| {
            let mut seen = vec![false; zeros.len()];
            augment(d, &self.dots, &zeros, &mut owner, &mut seen)
        }))
    }

    /// Words whose coordinate subspaces lie in the variety.
    pub fn fixed_points(&self) -> Vec<Word> {
        let k = self.n - self.len().min(self.n);
        Word::all(self.n, k)
            .into_iter()
            .filter(|w| self.fixed_point_in(w).unwrap_or(false))
            .collect()
    }
}

impl fmt::Display for DotSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dots.iter().map(|(i, j)| format!("{i},{j}")).collect();
        f.write_str(&parts.join(";"))
    }
}

/// Rank bounds `r_ij` for every window `[i, j]`, `i <= j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RankMatrix {
    n: usize,
    /// Row-major `n x n`; entries below the diagonal are unused.
    r: Vec<u32>,
}

impl RankMatrix {
    pub fn from_dots(d: &DotSet) -> RankMatrix {
        let n = d.n();
        let mut r = vec![0; n * n];
        for i in 1..=n {
            for j in i..=n {
                r[(i - 1) * n + (j - 1)] = (j - i + 1 - d.dots_within(i, j)) as u32;
            }
        }
        RankMatrix { n, r }
    }

    /// Builds a matrix from a function on cells without validating it.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> u32) -> RankMatrix {
        let mut r = vec![0; n * n];
        for i in 1..=n {
            for j in i..=n {
                r[(i - 1) * n + (j - 1)] = f(i, j);
            }
        }
        RankMatrix { n, r }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `r_ij`, with `r_ij = 0` for empty windows (`i > j`).
    pub fn get(&self, i: usize, j: usize) -> u32 {
        if i > j || i == 0 || j > self.n {
            0
        } else {
            self.r[(i - 1) * self.n + (j - 1)]
        }
    }

    /// Checks the defining properties; the returned list is empty when valid.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.n;
        for i in 1..=n {
            if self.get(i, i) > 1 {
                out.push(format!("r({i},{i}) = {} is not 0 or 1", self.get(i, i)));
            }
            for j in i..=n {
                let v = self.get(i, j);
                for (what, nb) in [("west", self.get(i, j - 1)), ("south", self.get(i + 1, j))] {
                    if v < nb || v > nb + 1 {
                        out.push(format!("r({i},{j}) = {v} differs from its {what} neighbour {nb} by more than 0 or 1"));
                    }
                }
                if i > 1 && j < n {
                    let (north, east, ne) = (self.get(i - 1, j), self.get(i, j + 1), self.get(i - 1, j + 1));
                    if v == north && v == east && ne != v {
                        out.push(format!(
                            "r({i},{j}) equals its north and east neighbours but r({},{}) = {ne}",
                            i - 1,
                            j + 1
                        ));
                    }
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        match self.violations().first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidRank(v.clone())),
        }
    }

    /// The dot set whose rank matrix this is.
    pub fn to_dots(&self) -> Result<DotSet> {
        self.validate()?;
        let s = |i: usize, j: usize| -> i64 {
            let len = if j + 1 > i { (j + 1 - i) as i64 } else { 0 };
            len - self.get(i, j) as i64
        };
        let mut dots = Vec::new();
        for i in 1..=self.n {
            for j in i..=self.n {
                let x = s(i, j) - s(i, j - 1) - s(i + 1, j) + s(i + 1, j - 1);
                match x {
                    0 => {}
                    1 => dots.push((i, j)),
                    _ => {
                        return Err(Error::InvalidRank(format!(
                            "window ({i},{j}) has dot multiplicity {x}"
                        )))
                    }
                }
            }
        }
        let d = DotSet::new(self.n, dots).map_err(|e| Error::InvalidRank(e.to_string()))?;
        if RankMatrix::from_dots(&d) != *self {
            return Err(Error::InvalidRank("matrix is not the rank matrix of any dot set".into()));
        }
        Ok(d)
    }

    /// Entrywise minimum, validated.
    pub fn min(&self, other: &RankMatrix) -> Result<RankMatrix> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(format!(
                "rank matrices of sizes {} and {}",
                self.n, other.n
            )));
        }
        let m = RankMatrix {
            n: self.n,
            r: self.r.iter().zip(&other.r).map(|(a, b)| *a.min(b)).collect(),
        };
        m.validate()?;
        Ok(m)
    }

    /// Entrywise `self <= other`.
    pub fn le(&self, other: &RankMatrix) -> bool {
        self.n == other.n && self.r.iter().zip(&other.r).all(|(a, b)| a <= b)
    }

    /// Whether `m` (given by its window ranks) satisfies every bound.
    pub fn admits(&self, ranks: &RankMatrix) -> bool {
        ranks.le(self)
    }

    /// Whether `m` satisfies the bounds at the listed cells.
    pub fn admits_at(&self, ranks: &RankMatrix, cells: &[Cell]) -> bool {
        cells.iter().all(|&(i, j)| ranks.get(i, j) <= self.get(i, j))
    }
}

impl fmt::Display for RankMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.n {
            let row: Vec<String> = (1..=self.n)
                .map(|j| if j < i { ".".into() } else { self.get(i, j).to_string() })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// A rank bound `r_ij <= bound`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub cell: Cell,
    pub bound: u32,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}) r<={}", self.cell.0, self.cell.1, self.bound)
    }
}

/// The essential conditions of `d`, including vacuous ones.
pub fn essential_conditions(d: &DotSet) -> Vec<Condition> {
    let r = RankMatrix::from_dots(d);
    d.essential_set()
        .into_iter()
        .map(|cell| Condition {
            cell,
            bound: r.get(cell.0, cell.1),
        })
        .collect()
}

/// Essential conditions that actually constrain a `k`-plane: bounds below
/// `min(k, j - i + 1)`.
pub fn nontrivial_conditions(d: &DotSet, k: usize) -> Vec<Condition> {
    essential_conditions(d)
        .into_iter()
        .filter(|c| (c.bound as usize) < k.min(c.cell.1 - c.cell.0 + 1))
        .collect()
}

/// Column-set action of the one-parameter shift moving column `j` toward
/// column `i`.
pub fn shift_basic(s: &BTreeSet<usize>, i: usize, j: usize) -> BTreeSet<usize> {
    if s.contains(&i) || !s.contains(&j) {
        return s.clone();
    }
    let mut out = s.clone();
    out.remove(&j);
    out.insert(i);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(n: usize, s: &str) -> DotSet {
        DotSet::parse(s, n).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn rank_examples() {
        let r = RankMatrix::from_dots(&ds(5, "1,5;3,3"));
        assert_eq!((r.get(3, 3), r.get(1, 5)), (0, 3));
        let r = RankMatrix::from_dots(&DotSet::empty(4));
        for i in 1..=4 {
            for j in i..=4 {
                assert_eq!(r.get(i, j) as usize, j - i + 1);
            }
        }
        let r = RankMatrix::from_dots(&ds(4, "1,2;3,4"));
        assert_eq!((r.get(1, 2), r.get(3, 4), r.get(1, 4)), (1, 1, 2));
    }

    #[test]
    fn dots_from_rank_examples() {
        let r = RankMatrix::from_fn(2, |_, _| 1);
        assert_eq!(r.to_dots().unwrap(), ds(2, "1,2"));
        let r = RankMatrix::from_fn(1, |_, _| 0);
        assert_eq!(r.to_dots().unwrap(), ds(1, "1,1"));
        let bad = RankMatrix::from_fn(2, |i, j| if i == j { 1 } else { 3 });
        assert!(matches!(bad.to_dots(), Err(Error::InvalidRank(_))));
    }

    #[test]
    fn round_trip_exhaustive() {
        for n in 1..=7 {
            for m in 0..=n {
                for d in DotSet::all_of_size(n, m) {
                    let r = RankMatrix::from_dots(&d);
                    assert!(r.violations().is_empty(), "{d}: {:?}", r.violations());
                    assert_eq!(r.to_dots().unwrap(), d);
                }
            }
        }
    }

    #[test]
    fn dot_set_counts_are_bell_numbers() {
        let bell = [1, 2, 5, 15, 52, 203];
        for (n, &b) in bell.iter().enumerate() {
            let total: usize = (0..=n).map(|m| DotSet::all_of_size(n, m).len()).sum();
            assert_eq!(total, b);
        }
    }

    #[test]
    fn parse_rejects_bad_sets() {
        assert!(DotSet::parse("2,1", 3).is_err());
        assert!(DotSet::parse("1,2;1,3", 3).is_err());
        assert!(DotSet::parse("1,3;2,3", 3).is_err());
        assert!(DotSet::parse("1;2", 3).is_err());
        assert!(DotSet::parse("1,4", 3).is_err());
        assert_eq!(DotSet::parse("", 3).unwrap(), DotSet::empty(3));
    }

    #[test]
    fn essential_examples() {
        assert_eq!(ds(5, "1,5;3,3").essential_set(), vec![(3, 3), (1, 5)]);
        let mut e = ds(4, "1,2;3,4").essential_set();
        e.sort();
        assert_eq!(e, vec![(1, 2), (1, 4), (3, 4)]);
        let text: Vec<String> = essential_conditions(&ds(5, "1,5;3,3"))
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(text.join("; "), "(3,3) r<=0; (1,5) r<=3");
        let nt = nontrivial_conditions(&ds(4, "1,2;2,4"), 2);
        assert_eq!(nt, vec![Condition { cell: (1, 2), bound: 1 }]);
    }

    #[test]
    fn fixed_point_examples() {
        let d = ds(4, "2,2;1,4");
        assert!(d.fixed_point_in(&w("1010")).unwrap());
        assert!(!d.fixed_point_in(&w("0110")).unwrap());
        for x in Word::all(4, 4) {
            assert!(DotSet::empty(4).fixed_point_in(&x).unwrap());
        }
        assert!(ds(5, "1,5;3,3").fixed_point_in(&w("01011")).unwrap());
        assert!(matches!(d.fixed_point_in(&w("1000")), Err(Error::SizeMismatch(_))));
    }

    #[test]
    fn matching_examples() {
        let d = ds(4, "2,2;1,4");
        assert!(d.matching_exists(&w("1010")).unwrap());
        assert!(!d.matching_exists(&w("0110")).unwrap());
        assert!(!ds(3, "2,2").matching_exists(&w("110")).unwrap());
        assert!(ds(3, "1,3").matching_exists(&w("101")).unwrap());
        assert!(ds(5, "1,5;3,3").matching_exists(&w("01011")).unwrap());
    }

    #[test]
    fn hall_equivalence_small() {
        for n in 1..=5 {
            for m in 0..=n {
                for d in DotSet::all_of_size(n, m) {
                    for x in Word::all(n, n - m) {
                        assert_eq!(
                            d.fixed_point_in(&x).unwrap(),
                            d.matching_exists(&x).unwrap(),
                            "{d} {x}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn envelope_examples() {
        assert_eq!(ds(5, "1,5;3,3").envelope(), (w("01011"), w("11010")));
        assert_eq!(ds(4, "1,2;3,4").envelope(), (w("0101"), w("1010")));
        assert_eq!(ds(4, "2,2;4,4").envelope(), (w("1010"), w("1010")));
    }

    #[test]
    fn envelope_codim_examples() {
        assert_eq!(ds(5, "1,5;3,3").envelope_codim(), 1);
        assert_eq!(ds(5, "1,2;3,4;4,5").envelope_codim(), 0);
        assert_eq!(ds(3, "2,2;1,3").envelope_codim(), 1);
    }

    #[test]
    fn shift_examples() {
        let s = |v: &[usize]| v.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(shift_basic(&s(&[3, 4]), 2, 4), s(&[2, 3]));
        assert_eq!(shift_basic(&s(&[1, 2]), 2, 4), s(&[1, 2]));
        assert_eq!(shift_basic(&s(&[2, 4]), 2, 4), s(&[2, 4]));
    }

    #[test]
    fn min_examples() {
        let r = RankMatrix::from_dots(&ds(4, "1,2;3,4"));
        assert_eq!(r.min(&r).unwrap(), r);
        let free = RankMatrix::from_dots(&DotSet::empty(4));
        assert_eq!(r.min(&free).unwrap(), r);
        let g0 = RankMatrix::from_dots(&ds(4, "1,3;2,2"));
        assert_eq!(g0.min(&g0).unwrap().to_dots().unwrap(), ds(4, "1,3;2,2"));
    }
}
