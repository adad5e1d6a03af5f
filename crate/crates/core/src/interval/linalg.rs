//! Exact ranks of column windows of an integer matrix.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::RankMatrix;

/// Rank over the rationals by fraction-free (Bareiss) elimination.
fn rank_rational(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for cc in c + 1..cols {
                let v = &a[r][cc] * &a[rank][c] - &a[r][c] * &a[rank][cc];
                a[r][cc] = v / &prev;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn inv_mod(x: u64, p: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (x % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Rank over the field with `p` elements (`p` prime).
fn rank_mod(mut a: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = inv_mod(a[rank][c], p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            let f = row[c] * inv % p;
            if f == 0 {
                continue;
            }
            for (x, &y) in row[c..cols].iter_mut().zip(&pivot_row[c..cols]) {
                *x = (*x + p * p - f * y % p) % p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Ranks of the columns `i..=j` of an arbitrary `rows x n` matrix.
fn window_rank(m: &[Vec<i64>], i: usize, j: usize, prime: Option<u64>) -> usize {
    match prime {
        Some(p) => rank_mod(
            m.iter()
                .map(|row| row[i - 1..j].iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
                .collect(),
            p,
        ),
        None => rank_rational(
            m.iter()
                .map(|row| row[i - 1..j].iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        ),
    }
}

/// Interval rank matrix of the row span of `m` (a `k x n` matrix): entry
/// `(i, j)` is the rank of columns `i..=j`, computed over the rationals or
/// over `F_p` when a prime is given.
pub fn rank_of_matrix(m: &[Vec<i64>], n: usize, prime: Option<u64>) -> RankMatrix {
    RankMatrix::from_fn(n, |i, j| window_rank(m, i, j, prime) as u32)
}

/// Same as [`rank_of_matrix`]; kept as the name used by the verifier.
pub fn window_ranks(m: &[Vec<i64>], n: usize, prime: Option<u64>) -> RankMatrix {
    rank_of_matrix(m, n, prime)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn coordinate_subspace() {
        let m = vec![vec![1, 0, 0, 0], vec![0, 0, 1, 0]];
        let r = rank_of_matrix(&m, 4, None);
        let w: crate::words::Word = "1010".parse().unwrap();
        for i in 1..=4 {
            for j in i..=4 {
                assert_eq!(r.get(i, j) as usize, w.window_sum(i, j));
            }
        }
    }

    #[test]
    fn zero_and_generic() {
        let r = rank_of_matrix(&[vec![0; 4], vec![0; 4]], 4, Some(5));
        assert!((1..=4).all(|i| (i..=4).all(|j| r.get(i, j) == 0)));
        let g = vec![vec![1, 1, 1, 1], vec![1, 2, 3, 4]];
        for p in [None, Some(7)] {
            let r = rank_of_matrix(&g, 4, p);
            for i in 1..=4 {
                for j in i..=4 {
                    assert_eq!(r.get(i, j) as usize, 2.min(j - i + 1));
                }
            }
        }
    }

    #[test]
    fn rational_agrees_with_large_prime() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let rows = rng.random_range(1..=4);
            let m: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..5).map(|_| rng.random_range(-3..=3)).collect())
                .collect();
            assert_eq!(
                rank_of_matrix(&m, 5, None),
                rank_of_matrix(&m, 5, Some(1_000_000_007))
            );
        }
    }
}
