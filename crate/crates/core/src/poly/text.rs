//! Canonical text form.
//!
//! Terms are joined by `" + "`. A constant term is its bare coefficient;
//! any other term is `coef*factor*...` where a factor is `yI` or `yI^E` for
//! ordinary polynomials, and a single `E(a1,...,an)` for Laurent ones. The
//! zero polynomial is `0`.

use std::fmt::Write;

use num_bigint::BigInt;

use super::{Flavor, Sparse};
use crate::error::{Error, Result};

pub(super) fn render<F: Flavor>(p: &Sparse<F>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::with_capacity(p.len());
    for (exp, c) in p.terms() {
        let mut s = c.to_string();
        if exp.iter().any(|&e| e != 0) {
            if F::LAURENT {
                let list: Vec<String> = exp.iter().map(i32::to_string).collect();
                write!(s, "*E({})", list.join(",")).unwrap();
            } else {
                for (idx, &e) in exp.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => write!(s, "*y{}", idx + 1).unwrap(),
                        _ => write!(s, "*y{}^{}", idx + 1, e).unwrap(),
                    }
                }
            }
        }
        parts.push(s);
    }
    parts.join(" + ")
}

fn malformed(s: &str, why: &str) -> Error {
    Error::Malformed(format!("polynomial {s:?}: {why}"))
}

pub(super) fn parse<F: Flavor>(s: &str, n: usize) -> Result<Sparse<F>> {
    let text = s.trim();
    if text.is_empty() {
        return Err(malformed(s, "empty"));
    }
    let mut out = Sparse::<F>::zero(n);
    for raw in text.split('+') {
        let term = raw.trim();
        let mut factors = term.split('*');
        let coef: BigInt = factors
            .next()
            .unwrap_or("")
            .trim()
            .parse()
            .map_err(|_| malformed(s, &format!("bad coefficient in {term:?}")))?;
        let mut exp = vec![0i32; n];
        for f in factors {
            let f = f.trim();
            if F::LAURENT {
                let inner = f
                    .strip_prefix("E(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| malformed(s, &format!("bad factor {f:?}")))?;
                let vals: Vec<i32> = inner
                    .split(',')
                    .map(|v| v.trim().parse())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| malformed(s, &format!("bad exponent list {f:?}")))?;
                if vals.len() != n {
                    return Err(Error::SizeMismatch(format!(
                        "{f:?} has {} exponents, expected {n}",
                        vals.len()
                    )));
                }
                for (slot, v) in exp.iter_mut().zip(vals) {
                    *slot += v;
                }
            } else {
                let body = f
                    .strip_prefix('y')
                    .ok_or_else(|| malformed(s, &format!("bad factor {f:?}")))?;
                let (var, pow) = match body.split_once('^') {
                    Some((v, e)) => (v, e),
                    None => (body, "1"),
                };
                let var: usize = var
                    .parse()
                    .map_err(|_| malformed(s, &format!("bad variable in {f:?}")))?;
                let pow: i32 = pow
                    .parse()
                    .map_err(|_| malformed(s, &format!("bad power in {f:?}")))?;
                if var == 0 || var > n {
                    return Err(Error::SizeMismatch(format!(
                        "variable y{var} out of range 1..={n}"
                    )));
                }
                exp[var - 1] += pow;
            }
        }
        out = out.try_add(&Sparse::monomial(n, exp, coef)?)?;
    }
    Ok(out)
}
