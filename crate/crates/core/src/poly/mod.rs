//! Exact sparse polynomials over the integers.
//!
//! [`Poly`] lives in `Z[y_1..y_n]` (equivariant cohomology of a point) and
//! [`LPoly`] in `Z[e^{±y_1}..e^{±y_n}]` (equivariant K-theory of a point).
//! Both share one representation: a map from exponent vectors to nonzero
//! `BigInt` coefficients. For an `LPoly` the exponent vector `a` stands for
//! `e^{a_1 y_1 + ... + a_n y_n}`.

mod series;
mod text;

use std::cmp::{Ordering, Reverse};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use series::{lowest_form, TruncSeries};

/// Selects which ring a [`Sparse`] value belongs to.
pub trait Flavor: Clone + fmt::Debug + PartialEq + Eq + Default {
    /// Whether negative exponents are allowed.
    const LAURENT: bool;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Ordinary;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Laurent;

impl Flavor for Ordinary {
    const LAURENT: bool = false;
}

impl Flavor for Laurent {
    const LAURENT: bool = true;
}

pub type Poly = Sparse<Ordinary>;
pub type LPoly = Sparse<Laurent>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sparse<F: Flavor> {
    n: usize,
    terms: BTreeMap<Vec<i32>, BigInt>,
    _flavor: PhantomData<F>,
}

/// Sort key for canonical term order: total degree (sum of absolute
/// exponents) ascending, then exponent vectors in descending lex order, so
/// `y1` precedes `y4` and constants come first.
fn term_order(a: &[i32], b: &[i32]) -> Ordering {
    let deg = |e: &[i32]| e.iter().map(|x| x.unsigned_abs() as u64).sum::<u64>();
    (deg(a), Reverse(a)).cmp(&(deg(b), Reverse(b)))
}

impl<F: Flavor> Sparse<F> {
    pub fn zero(n: usize) -> Self {
        Sparse {
            n,
            terms: BTreeMap::new(),
            _flavor: PhantomData,
        }
    }

    pub fn constant(n: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(n, vec![0; n], c).expect("constant exponent vector is valid")
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, 1)
    }

    /// `c * y^exp` (or `c * e^{exp . y}` for Laurent polynomials).
    pub fn monomial(n: usize, exp: Vec<i32>, c: impl Into<BigInt>) -> Result<Self> {
        if exp.len() != n {
            return Err(Error::SizeMismatch(format!(
                "exponent vector of length {} in {} variables",
                exp.len(),
                n
            )));
        }
        if !F::LAURENT && exp.iter().any(|&e| e < 0) {
            return Err(Error::Malformed(format!(
                "negative exponent {exp:?} in an ordinary polynomial"
            )));
        }
        let mut p = Self::zero(n);
        p.add_term(exp, c.into());
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of the given monomial (zero when absent).
    pub fn coeff(&self, exp: &[i32]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> Vec<(&[i32], &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (e.as_slice(), c)).collect();
        v.sort_by(|a, b| term_order(a.0, b.0));
        v
    }

    /// Value of the constant monomial.
    pub fn constant_term(&self) -> BigInt {
        self.coeff(&vec![0; self.n])
    }

    fn add_term(&mut self, exp: Vec<i32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(format!(
                "polynomials in {} and {} variables",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut out = Self::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (e, x) in &self.terms {
            out.terms.insert(e.clone(), x * &c);
        }
        out
    }

    /// The terms whose exponent vectors satisfy `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&[i32]) -> bool) -> Self {
        Sparse {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            _flavor: PhantomData,
        }
    }

    /// Deterministic text form; see the [`text`] module for the grammar.
    pub fn render(&self) -> String {
        text::render(self)
    }

    pub fn parse(s: &str, n: usize) -> Result<Self> {
        text::parse(s, n)
    }

    /// Terms in the JSON-friendly `{coef, exp}` shape, canonical order.
    pub fn to_terms(&self) -> Vec<Term> {
        self.terms()
            .into_iter()
            .map(|(e, c)| Term {
                coef: c.clone(),
                exp: e.to_vec(),
            })
            .collect()
    }

    pub fn from_terms(n: usize, terms: &[Term]) -> Result<Self> {
        let mut p = Self::zero(n);
        for t in terms {
            p = p.try_add(&Self::monomial(n, t.exp.clone(), t.coef.clone())?)?;
        }
        Ok(p)
    }
}

impl Poly {
    /// The variable `y_i` (1-based).
    pub fn var(n: usize, i: usize) -> Poly {
        let mut e = vec![0; n];
        e[i - 1] = 1;
        Poly::monomial(n, e, 1).expect("valid variable index")
    }

    /// Specialization `y -> 0`.
    pub fn y_to_zero(&self) -> BigInt {
        self.constant_term()
    }

    /// Total degree of every term, if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self
            .terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }
}

impl LPoly {
    /// `e^{y_i - y_j}` (1-based indices).
    pub fn exp_root(n: usize, i: usize, j: usize) -> LPoly {
        let mut e = vec![0; n];
        e[i - 1] += 1;
        e[j - 1] -= 1;
        LPoly::monomial(n, e, 1).expect("valid root indices")
    }

    /// Specialization `e^y -> 1`: the sum of all coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl<F: Flavor> $tr<&Sparse<F>> for &Sparse<F> {
            type Output = Sparse<F>;
            fn $method(self, rhs: &Sparse<F>) -> Sparse<F> {
                self.$try(rhs).expect("operands have the same number of variables")
            }
        }

        impl<F: Flavor> $tr for Sparse<F> {
            type Output = Sparse<F>;
            fn $method(self, rhs: Sparse<F>) -> Sparse<F> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl<F: Flavor> Neg for &Sparse<F> {
    type Output = Sparse<F>;
    fn neg(self) -> Sparse<F> {
        self.scale(-1)
    }
}

impl<F: Flavor> Neg for Sparse<F> {
    type Output = Sparse<F>;
    fn neg(self) -> Sparse<F> {
        self.scale(-1)
    }
}

impl<F: Flavor> fmt::Display for Sparse<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// One term in the JSON encoding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    #[serde(serialize_with = "ser_bigint", deserialize_with = "de_bigint")]
    pub coef: BigInt,
    pub exp: Vec<i32>,
}

/// Integers that fit in an `i64` are written as JSON numbers, larger ones as
/// decimal strings.
fn ser_bigint<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.collect_str(x),
    }
}

fn de_bigint<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Int(i64),
        Str(String),
    }
    match Repr::deserialize(d)? {
        Repr::Int(v) => Ok(BigInt::from(v)),
        Repr::Str(s) => s.parse().map_err(D::Error::custom),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn y(i: usize) -> Poly {
        Poly::var(4, i)
    }

    fn e(i: usize, j: usize) -> LPoly {
        LPoly::exp_root(4, i, j)
    }

    #[test]
    fn distributivity_example() {
        let one = LPoly::one(4);
        let lhs = &(&one - &e(2, 4)) * &e(2, 4);
        let sq = LPoly::monomial(4, vec![0, 2, 0, -2], 1).unwrap();
        assert_eq!(lhs, &e(2, 4) - &sq);
    }

    #[test]
    fn cancellation_leaves_zero() {
        let p = &(&y(4) - &y(1)) + &(&y(1) - &y(4));
        assert!(p.is_zero());
        assert_eq!(p.render(), "0");
    }

    #[test]
    fn roots_multiply() {
        assert_eq!(&e(2, 4) * &e(1, 2), e(1, 4));
    }

    #[test]
    fn specializations() {
        assert_eq!(
            (&LPoly::one(4) - &e(1, 4)).eval_at_one(),
            BigInt::zero()
        );
        assert_eq!((-e(1, 4)).eval_at_one(), BigInt::from(-1));
        assert_eq!(e(2, 4).eval_at_one(), BigInt::one());
        assert_eq!((&y(4) - &y(1)).y_to_zero(), BigInt::zero());
        assert_eq!(Poly::one(4).y_to_zero(), BigInt::one());
        let p = &Poly::constant(4, 2) + &(&y(1) * &y(2));
        assert_eq!(p.y_to_zero(), BigInt::from(2));
    }

    #[test]
    fn render_examples() {
        assert_eq!((&y(4) - &y(1)).render(), "-1*y1 + 1*y4");
        assert_eq!((-e(1, 4)).render(), "-1*E(1,0,0,-1)");
        assert_eq!(LPoly::zero(4).render(), "0");
        assert_eq!(
            (&LPoly::one(4) - &e(1, 4)).render(),
            "1 + -1*E(1,0,0,-1)"
        );
        let p = &(&y(1) * &(&y(2) * &y(2))).scale(-1) + &Poly::constant(4, 3);
        assert_eq!(p.render(), "3 + -1*y1*y2^2");
    }

    #[test]
    fn mismatched_variable_counts_are_errors() {
        let a = Poly::var(3, 1);
        let b = Poly::var(4, 1);
        assert!(matches!(a.try_add(&b), Err(Error::SizeMismatch(_))));
        assert!(matches!(a.try_mul(&b), Err(Error::SizeMismatch(_))));
    }

    #[test]
    fn ordinary_rejects_negative_exponents() {
        assert!(Poly::monomial(2, vec![1, -1], 1).is_err());
        assert!(LPoly::monomial(2, vec![1, -1], 1).is_ok());
    }

    #[test]
    fn json_terms_roundtrip() {
        let p = &(&LPoly::one(4) - &e(1, 4)) * &LPoly::constant(4, BigInt::from(1u128 << 80));
        let terms = p.to_terms();
        let back = LPoly::from_terms(4, &terms).unwrap();
        assert_eq!(back, p);
    }

    fn arb_lpoly() -> impl Strategy<Value = LPoly> {
        prop::collection::vec((prop::collection::vec(-2i32..=2, 3), -3i64..=3), 0..5).prop_map(
            |terms| {
                terms.into_iter().fold(LPoly::zero(3), |acc, (e, c)| {
                    &acc + &LPoly::monomial(3, e, c).unwrap()
                })
            },
        )
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((prop::collection::vec(0i32..=2, 3), -3i64..=3), 0..5).prop_map(
            |terms| {
                terms.into_iter().fold(Poly::zero(3), |acc, (e, c)| {
                    &acc + &Poly::monomial(3, e, c).unwrap()
                })
            },
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_lpoly(), b in arb_lpoly(), c in arb_lpoly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn eval_at_one_is_multiplicative(a in arb_lpoly(), b in arb_lpoly()) {
            prop_assert_eq!((&a * &b).eval_at_one(), a.eval_at_one() * b.eval_at_one());
        }

        #[test]
        fn render_parse_roundtrip(a in arb_lpoly(), p in arb_poly()) {
            prop_assert_eq!(LPoly::parse(&a.render(), 3).unwrap(), a.clone());
            prop_assert_eq!(LPoly::parse(&a.render(), 3).unwrap().render(), a.render());
            prop_assert_eq!(Poly::parse(&p.render(), 3).unwrap(), p);
        }
    }
}
