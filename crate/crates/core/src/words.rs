//! Binary words indexing Schubert classes and torus-fixed points of `Gr_k(n)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A 0/1 string of length `n`. The number of ones is the `k` of the
/// Grassmannian `Gr_k(n)` the word lives in.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    bits: Vec<bool>,
}

impl Word {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Word { bits }
    }

    /// Parses `s` and checks it has length `n` and exactly `k` ones.
    pub fn validate(s: &str, n: usize, k: usize) -> Result<Word> {
        let w: Word = s.parse()?;
        if w.len() != n {
            return Err(Error::Length {
                expected: n,
                found: w.len(),
            });
        }
        if w.ones() != k {
            return Err(Error::OneCount {
                expected: k,
                found: w.ones(),
            });
        }
        Ok(w)
    }

    /// `0^(n-k) 1^k`, the word with no inversions.
    pub fn sorted(n: usize, k: usize) -> Word {
        Word {
            bits: (0..n).map(|p| p >= n - k).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn zeros(&self) -> usize {
        self.len() - self.ones()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// The symbol at 1-based position `p`.
    pub fn at(&self, p: usize) -> bool {
        self.bits[p - 1]
    }

    /// 1-based positions holding a one.
    pub fn one_positions(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&p| self.at(p)).collect()
    }

    pub fn zero_positions(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&p| !self.at(p)).collect()
    }

    /// Number of ones among positions `i..=j` (1-based, inclusive).
    pub fn window_sum(&self, i: usize, j: usize) -> usize {
        self.bits[i - 1..j].iter().filter(|&&b| b).count()
    }

    pub fn reversed(&self) -> Word {
        Word {
            bits: self.bits.iter().rev().copied().collect(),
        }
    }

    /// `#{(i,j) : i < j, w_i = 1, w_j = 0}`.
    pub fn inversions(&self) -> usize {
        let mut ones_seen = 0;
        let mut inv = 0;
        for &b in &self.bits {
            if b {
                ones_seen += 1;
            } else {
                inv += ones_seen;
            }
        }
        inv
    }

    /// The partition whose a-th part counts the zeros strictly right of the
    /// a-th one. Fits in a `k x (n-k)` box and has size `inversions()`.
    pub fn to_partition(&self) -> Vec<usize> {
        let mut zeros_right = self.zeros();
        let mut parts = Vec::with_capacity(self.ones());
        for &b in &self.bits {
            if b {
                parts.push(zeros_right);
            } else {
                zeros_right -= 1;
            }
        }
        parts
    }

    /// All words of length `n` with `k` ones, in lexicographic order.
    pub fn all(n: usize, k: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        fn rec(n: usize, k: usize, cur: &mut Vec<bool>, out: &mut Vec<Word>) {
            let placed = cur.iter().filter(|&&b| b).count();
            if cur.len() == n {
                if placed == k {
                    out.push(Word::from_bits(cur.clone()));
                }
                return;
            }
            let left = n - cur.len();
            if placed + left > k {
                cur.push(false);
                rec(n, k, cur, out);
                cur.pop();
            }
            if placed < k {
                cur.push(true);
                rec(n, k, cur, out);
                cur.pop();
            }
        }
        if k <= n {
            rec(n, k, &mut cur, &mut out);
        }
        out
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let bits = s
            .chars()
            .enumerate()
            .map(|(idx, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Alphabet {
                    symbol: other,
                    position: idx + 1,
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Word { bits })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
