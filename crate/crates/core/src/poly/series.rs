//! Truncated power series in `z_1..z_n`, used to take the leading form of a
//! Laurent polynomial after substituting `e^{y_i} = 1 + z_i`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{LPoly, Poly};
use crate::error::{Error, Result};

/// A polynomial in `z_1..z_n` with every term of total degree above `max_deg`
/// discarded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    max_deg: u32,
    poly: Poly,
}

fn degree(exp: &[i32]) -> u32 {
    exp.iter().map(|&e| e as u32).sum()
}

impl TruncSeries {
    pub fn one(n: usize, max_deg: u32) -> Self {
        TruncSeries {
            max_deg,
            poly: Poly::one(n),
        }
    }

    /// `(1 + z_i)^a` for any integer `a` (1-based `i`).
    pub fn binomial_power(n: usize, max_deg: u32, i: usize, a: i32) -> Self {
        let mut poly = Poly::zero(n);
        let mut coef = BigInt::one();
        for k in 0..=max_deg {
            if coef.is_zero() {
                break;
            }
            let mut e = vec![0; n];
            e[i - 1] = k as i32;
            poly = &poly + &Poly::monomial(n, e, coef.clone()).expect("nonnegative exponent");
            // C(a, k+1) = C(a, k) * (a - k) / (k + 1), valid for negative a too
            coef = coef * BigInt::from(a - k as i32) / BigInt::from(k + 1);
        }
        TruncSeries { max_deg, poly }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prod = &self.poly * &other.poly;
        let max_deg = self.max_deg.min(other.max_deg);
        TruncSeries {
            max_deg,
            poly: prod.filter_terms(|e| degree(e) <= max_deg),
        }
    }

    /// Homogeneous component of total degree `d`.
    pub fn component(&self, d: u32) -> Poly {
        self.poly.filter_terms(|e| degree(e) == d)
    }

    pub fn as_poly(&self) -> &Poly {
        &self.poly
    }
}

/// Leading form of `p` in degree `d`: substitutes `e^{y_i} = 1 + z_i`,
/// checks that every component of degree below `d` vanishes, and returns the
/// degree-`d` component with `z` renamed to `y`.
pub fn lowest_form(p: &LPoly, d: u32) -> Result<Poly> {
    let n = p.nvars();
    let mut total = Poly::zero(n);
    for (exp, c) in p.terms() {
        let mut s = TruncSeries::one(n, d);
        for (idx, &a) in exp.iter().enumerate() {
            if a != 0 {
                s = s.mul(&TruncSeries::binomial_power(n, d, idx + 1, a));
            }
        }
        total = &total + &s.poly.scale(c.clone());
    }
    for low in 0..d {
        let comp = total.filter_terms(|e| degree(e) == low);
        if !comp.is_zero() {
            return Err(Error::Invariant(format!(
                "Laurent polynomial {} has a nonzero degree-{low} component {} below degree {d}",
                p.render(),
                comp.render()
            )));
        }
    }
    Ok(total.filter_terms(|e| degree(e) == d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(i: usize, j: usize) -> LPoly {
        LPoly::exp_root(4, i, j)
    }

    #[test]
    fn examples() {
        let p = &LPoly::one(4) - &e(1, 4);
        assert_eq!(lowest_form(&p, 1).unwrap().render(), "-1*y1 + 1*y4");
        assert_eq!(lowest_form(&e(1, 4), 0).unwrap(), Poly::one(4));
        assert_eq!(lowest_form(&-e(1, 4), 0).unwrap(), Poly::constant(4, -1));
    }

    #[test]
    fn low_components_must_vanish() {
        assert!(matches!(lowest_form(&e(1, 4), 1), Err(Error::Invariant(_))));
    }

    #[test]
    fn inverse_series() {
        let s = TruncSeries::binomial_power(1, 3, 1, -1);
        assert_eq!(s.as_poly().render(), "1 + -1*y1 + 1*y1^2 + -1*y1^3");
        let sq = TruncSeries::binomial_power(1, 4, 1, 2);
        assert_eq!(sq.as_poly().render(), "1 + 2*y1 + 1*y1^2");
    }

    fn arb_vanishing(d: u32) -> impl Strategy<Value = LPoly> {
        // products of d factors (1 - e^{y_i - y_j}) times a unit monomial
        prop::collection::vec((1usize..=3, 1usize..=3), d as usize).prop_flat_map(move |pairs| {
            prop::collection::vec(-1i32..=1, 3).prop_map(move |shift| {
                let mut p = LPoly::monomial(3, shift.clone(), 1).unwrap();
                for &(i, j) in &pairs {
                    let f = &LPoly::one(3) - &LPoly::exp_root(3, i, j);
                    p = &p * &f;
                }
                p
            })
        })
    }

    proptest! {
        #[test]
        fn multiplicative(a in arb_vanishing(1), b in arb_vanishing(2)) {
            let lhs = lowest_form(&(&a * &b), 3).unwrap();
            let rhs = &lowest_form(&a, 1).unwrap() * &lowest_form(&b, 2).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
