//! Per-theory weights attached to filling branches.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::board::BranchKind;
use crate::error::Error;
use crate::poly::{LPoly, Poly, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theory {
    H,
    HT,
    K,
    KT,
}

impl Theory {
    pub const ALL: [Theory; 4] = [Theory::H, Theory::HT, Theory::K, Theory::KT];

    pub fn name(self) -> &'static str {
        match self {
            Theory::H => "h",
            Theory::HT => "ht",
            Theory::K => "k",
            Theory::KT => "kt",
        }
    }

    /// Whether coefficients are Laurent polynomials in `e^y`.
    pub fn is_laurent(self) -> bool {
        self == Theory::KT
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Theory, Error> {
        match s.to_ascii_lowercase().as_str() {
            "h" => Ok(Theory::H),
            "ht" => Ok(Theory::HT),
            "k" => Ok(Theory::K),
            "kt" => Ok(Theory::KT),
            _ => Err(Error::Malformed(format!("unknown theory {s:?} (expected h, ht, k or kt)"))),
        }
    }
}

/// A structure constant or weight in one of the four theories.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Poly(Poly),
    Laurent(LPoly),
}

impl Coeff {
    pub fn one(t: Theory, n: usize) -> Coeff {
        Coeff::constant(t, n, 1)
    }

    pub fn zero(t: Theory, n: usize) -> Coeff {
        Coeff::constant(t, n, 0)
    }

    pub fn constant(t: Theory, n: usize, c: i64) -> Coeff {
        if t.is_laurent() {
            Coeff::Laurent(LPoly::constant(n, c))
        } else {
            Coeff::Poly(Poly::constant(n, c))
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Poly(p) => p.is_zero(),
            Coeff::Laurent(p) => p.is_zero(),
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Poly(a), Coeff::Poly(b)) => Coeff::Poly(a + b),
            (Coeff::Laurent(a), Coeff::Laurent(b)) => Coeff::Laurent(a + b),
            _ => panic!("adding coefficients from different theories"),
        }
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Poly(a), Coeff::Poly(b)) => Coeff::Poly(a * b),
            (Coeff::Laurent(a), Coeff::Laurent(b)) => Coeff::Laurent(a * b),
            _ => panic!("multiplying coefficients from different theories"),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Coeff::Poly(p) => p.render(),
            Coeff::Laurent(p) => p.render(),
        }
    }

    pub fn to_terms(&self) -> Vec<Term> {
        match self {
            Coeff::Poly(p) => p.to_terms(),
            Coeff::Laurent(p) => p.to_terms(),
        }
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        match self {
            Coeff::Poly(p) => Some(p),
            Coeff::Laurent(_) => None,
        }
    }

    pub fn as_laurent(&self) -> Option<&LPoly> {
        match self {
            Coeff::Laurent(p) => Some(p),
            Coeff::Poly(_) => None,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Source of branch weights; swappable so the verifier can run a broken
/// table as a negative control.
pub trait WeightTable: Sync {
    /// Weight of a branch of the given kind at rhombus `(i, j)` on a board
    /// of size `n`. Triangles and boring rhombi are passed as `Boring`.
    fn weight(&self, t: Theory, kind: BranchKind, i: usize, j: usize, n: usize) -> Coeff;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct StandardWeights;

impl WeightTable for StandardWeights {
    fn weight(&self, t: Theory, kind: BranchKind, i: usize, j: usize, n: usize) -> Coeff {
        let root = || LPoly::exp_root(n, i, j);
        match (kind, t) {
            (BranchKind::Boring, _) => Coeff::one(t, n),
            (BranchKind::Equivariant, Theory::H | Theory::K) => Coeff::zero(t, n),
            (BranchKind::Equivariant, Theory::HT) => Coeff::Poly(&Poly::var(n, j) - &Poly::var(n, i)),
            (BranchKind::Equivariant, Theory::KT) => Coeff::Laurent(&LPoly::one(n) - &root()),
            (BranchKind::ShiftZero | BranchKind::ShiftOne, Theory::KT) => Coeff::Laurent(root()),
            (BranchKind::ShiftZero | BranchKind::ShiftOne, _) => Coeff::one(t, n),
            (BranchKind::TopK, Theory::H | Theory::HT) => Coeff::zero(t, n),
            (BranchKind::TopK, Theory::K) => Coeff::constant(t, n, -1),
            (BranchKind::TopK, Theory::KT) => Coeff::Laurent(-root()),
        }
    }
}

/// The standard table with the sign of the top K-piece flipped in `K_T`.
#[derive(Debug, Clone, Copy, Default)]
pub struct FlippedTopK;

impl WeightTable for FlippedTopK {
    fn weight(&self, t: Theory, kind: BranchKind, i: usize, j: usize, n: usize) -> Coeff {
        if (kind, t) == (BranchKind::TopK, Theory::KT) {
            return Coeff::Laurent(LPoly::exp_root(n, i, j));
        }
        StandardWeights.weight(t, kind, i, j, n)
    }
}

pub fn branch_weight(t: Theory, kind: BranchKind, i: usize, j: usize, n: usize) -> Coeff {
    StandardWeights.weight(t, kind, i, j, n)
}
