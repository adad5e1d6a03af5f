//! Classical Littlewood-Richardson coefficients, computed from tableaux and
//! independent of the puzzle machinery.

use crate::words::Word;

/// Number of LR tableaux of skew shape `outer / inner` with content
/// `content`: semistandard fillings whose reverse reading word is a lattice
/// word.
pub fn lr_coefficient(outer: &[usize], inner: &[usize], content: &[usize]) -> u64 {
    let part = |p: &[usize], r: usize| p.get(r).copied().unwrap_or(0);
    let rows = outer.len();
    if (0..rows.max(inner.len())).any(|r| part(inner, r) > part(outer, r)) {
        return 0;
    }
    let skew: usize = outer.iter().sum::<usize>() - inner.iter().sum::<usize>();
    if skew != content.iter().sum::<usize>() {
        return 0;
    }
    let content: Vec<usize> = content.iter().copied().filter(|&c| c > 0).collect();

    // Cells in reverse reading order: rows top to bottom, each right to left.
    let cells: Vec<(usize, usize)> = (0..rows)
        .flat_map(|r| (part(inner, r)..part(outer, r)).rev().map(move |c| (r, c)))
        .collect();

    struct Search<'a> {
        cells: &'a [(usize, usize)],
        inner: &'a [usize],
        outer: &'a [usize],
        content: &'a [usize],
        grid: Vec<Vec<usize>>,
        used: Vec<usize>,
    }

    impl Search<'_> {
        fn entry(&self, r: usize, c: usize) -> Option<usize> {
            let lo = self.inner.get(r).copied().unwrap_or(0);
            let hi = self.outer.get(r).copied().unwrap_or(0);
            (c >= lo && c < hi).then(|| self.grid[r][c])
        }

        fn go(&mut self, idx: usize) -> u64 {
            let Some(&(r, c)) = self.cells.get(idx) else {
                return 1;
            };
            let mut total = 0;
            for v in 0..self.content.len() {
                if self.used[v] == self.content[v] {
                    continue;
                }
                // lattice: letter v+1 may not outnumber letter v
                if v > 0 && self.used[v] + 1 > self.used[v - 1] {
                    continue;
                }
                // weakly increasing along the row (right neighbour already filled)
                if self.entry(r, c + 1).is_some_and(|right| v > right) {
                    continue;
                }
                // strictly increasing down the column
                if r > 0 && self.entry(r - 1, c).is_some_and(|up| v <= up) {
                    continue;
                }
                self.grid[r][c] = v;
                self.used[v] += 1;
                total += self.go(idx + 1);
                self.used[v] -= 1;
            }
            total
        }
    }

    let width = outer.first().copied().unwrap_or(0);
    let mut s = Search {
        cells: &cells,
        inner,
        outer,
        content: &content,
        grid: vec![vec![usize::MAX; width]; rows],
        used: vec![0; content.len()],
    };
    s.go(0)
}

/// The `H*` structure constant `c_{lambda mu}^{nu}` of the puzzle rule, read
/// off from tableaux on the partitions of the three words.
pub fn lr_oracle(lambda: &Word, mu: &Word, nu: &Word) -> u64 {
    if lambda.len() != mu.len() || mu.len() != nu.len() {
        return 0;
    }
    if lambda.ones() != mu.ones() || mu.ones() != nu.ones() {
        return 0;
    }
    if lambda.inversions() + mu.inversions() != nu.inversions() {
        return 0;
    }
    lr_coefficient(&nu.to_partition(), &lambda.to_partition(), &mu.to_partition())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn classical_values() {
        assert_eq!(lr_coefficient(&[2, 1], &[1], &[1, 1]), 1);
        assert_eq!(lr_coefficient(&[2, 1], &[1], &[2]), 1);
        assert_eq!(lr_coefficient(&[3, 2, 1], &[2, 1], &[2, 1]), 2);
        assert_eq!(lr_coefficient(&[4, 2], &[2, 1], &[2, 1]), 1);
        assert_eq!(lr_coefficient(&[2, 2], &[2], &[1, 1]), 0);
        assert_eq!(lr_coefficient(&[2, 2], &[1], &[2, 1]), 1);
        assert_eq!(lr_coefficient(&[2], &[1, 1], &[]), 0);
        assert_eq!(lr_coefficient(&[], &[], &[]), 1);
    }

    #[test]
    fn worked_example() {
        assert_eq!(lr_oracle(&w("0110"), &w("0101"), &w("1010")), 1);
        assert_eq!(lr_oracle(&w("1001"), &w("0101"), &w("1010")), 1);
        assert_eq!(lr_oracle(&w("1010"), &w("0101"), &w("1010")), 0);
    }

    #[test]
    fn symmetric_in_lambda_and_mu() {
        for a in Word::all(5, 2) {
            for b in Word::all(5, 2) {
                for c in Word::all(5, 2) {
                    assert_eq!(lr_oracle(&a, &b, &c), lr_oracle(&b, &a, &c));
                }
            }
        }
    }
}
