//! Covering relations among dot sets with a fixed number of dots.
//!
//! A cover `d'` of `d` has a rank matrix strictly below that of `d` with no
//! dot set in between. Two kinds of move produce them: swapping a NW/SE pair
//! of dots into a SW/NE pair, and sliding one dot left into an empty column
//! or down into an empty row.

use super::{DotSet, RankMatrix};

fn with_dots(d: &DotSet, dots: Vec<(usize, usize)>) -> Option<DotSet> {
    DotSet::new(d.n(), dots).ok()
}

/// All covers of `d`, sorted.
pub fn covers(d: &DotSet) -> Vec<DotSet> {
    let n = d.n();
    let dots = d.dots();
    let mut out = Vec::new();

    // NW/SE pair (a,b), (a2,b2) becomes (a2,b), (a,b2).
    for (x, &(a, b)) in dots.iter().enumerate() {
        for (y, &(a2, b2)) in dots.iter().enumerate() {
            if !(a < a2 && b < b2 && a2 <= b) {
                continue;
            }
            let blocked = dots
                .iter()
                .any(|&(p, q)| a < p && p < a2 && b < q && q < b2);
            if blocked {
                continue;
            }
            let mut next: Vec<_> = dots
                .iter()
                .enumerate()
                .filter(|&(z, _)| z != x && z != y)
                .map(|(_, &c)| c)
                .collect();
            next.push((a2, b));
            next.push((a, b2));
            out.extend(with_dots(d, next));
        }
    }

    for (x, &(a, b)) in dots.iter().enumerate() {
        let rest = || {
            dots.iter()
                .enumerate()
                .filter(move |&(z, _)| z != x)
                .map(|(_, &c)| c)
        };
        // left into the nearest empty column
        if let Some(b2) = (a..b).rev().find(|&c| !d.col_has_dot(c)) {
            let blocked = dots.iter().any(|&(p, q)| p < a && b2 < q && q < b);
            if !blocked {
                out.extend(with_dots(d, rest().chain([(a, b2)]).collect()));
            }
        }
        // down into the nearest empty row
        if let Some(a2) = (a + 1..=b.min(n)).find(|&r| !d.row_has_dot(r)) {
            let blocked = dots.iter().any(|&(p, q)| a < p && p < a2 && q > b);
            if !blocked {
                out.extend(with_dots(d, rest().chain([(a2, b)]).collect()));
            }
        }
    }

    out.sort();
    out.dedup();
    out
}

/// Covers of `d` found by comparing rank matrices against every dot set of
/// the same size. Exponential; intended as a test oracle.
pub fn covers_brute_force(d: &DotSet) -> Vec<DotSet> {
    let r = RankMatrix::from_dots(d);
    let below: Vec<(DotSet, RankMatrix)> = DotSet::all_of_size(d.n(), d.len())
        .into_iter()
        .map(|e| {
            let re = RankMatrix::from_dots(&e);
            (e, re)
        })
        .filter(|(e, re)| e != d && re.le(&r))
        .collect();
    below
        .iter()
        .filter(|(e, re)| {
            !below
                .iter()
                .any(|(f, rf)| f != e && re.le(rf))
        })
        .map(|(e, _)| e.clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Word;

    fn ds(n: usize, s: &str) -> DotSet {
        DotSet::parse(s, n).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(covers(&ds(2, "1,2")), vec![ds(2, "1,1"), ds(2, "2,2")]);
        assert!(covers(&ds(3, "1,2;2,3")).contains(&ds(3, "1,3;2,2")));
        let c = covers(&ds(4, "1,2;3,4"));
        for e in &c {
            assert!(RankMatrix::from_dots(e).le(&RankMatrix::from_dots(&ds(4, "1,2;3,4"))));
        }
    }

    #[test]
    fn two_column_slide_is_a_cover() {
        assert!(covers(&ds(3, "1,3;2,2")).contains(&ds(3, "1,1;2,2")));
    }

    #[test]
    fn agrees_with_brute_force() {
        for n in 1..=5 {
            for m in 0..=n {
                for d in DotSet::all_of_size(n, m) {
                    let mut bf = covers_brute_force(&d);
                    bf.sort();
                    assert_eq!(covers(&d), bf, "covers of {d} (n={n})");
                }
            }
        }
    }

    #[test]
    fn covers_shrink_fixed_point_sets() {
        for n in 1..=5 {
            for m in 0..=n {
                for d in DotSet::all_of_size(n, m) {
                    let inside: Vec<Word> = d.fixed_points();
                    for c in covers(&d) {
                        for x in c.fixed_points() {
                            assert!(inside.contains(&x), "{c} has {x} but {d} does not");
                        }
                    }
                }
            }
        }
    }
}
