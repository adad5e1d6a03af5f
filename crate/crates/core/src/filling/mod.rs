//! Filling a puzzle path one piece at a time, and the structure constants
//! obtained by summing over all ways to finish.

mod trace;
mod weights;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::board::{check_pair, richardson_nonempty, BranchKind, Dir, FillPos, Label, Piece, Puzzle, PuzzlePath, Step};
use crate::error::{Error, Result};
use crate::words::Word;

pub use trace::{trace, TraceNode, TraceReport};
pub use weights::{branch_weight, Coeff, FlippedTopK, StandardWeights, Theory, WeightTable};

use Label::{One, Zero, K, R};

/// One legal way to fill the next position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Branch {
    pub kind: BranchKind,
    pub pos: FillPos,
    pub piece: Piece,
}

/// New `/` label of a bottom triangle, from the kink and the bottom edge.
fn triangle_rule(kink: Label, bottom: Label) -> Option<Label> {
    match (kink, bottom) {
        (One, One) => Some(One),
        (Zero, Zero) => Some(Zero),
        (R, One) => Some(Zero),
        (One, Zero) => Some(R),
        _ => None,
    }
}

/// `(new /, new \, middle)` for a rhombus whose right side is not `\1 /0`.
fn boring_rule(kink: Label, sigma: Label) -> Option<(Label, Label, Option<Label>)> {
    Some(match (kink, sigma) {
        (One, One) => (One, One, Some(One)),
        (Zero, Zero) => (Zero, Zero, Some(Zero)),
        (Zero, One) => (One, Zero, Some(R)),
        (One, R) => (R, One, Some(Zero)),
        (R, Zero) => (Zero, R, Some(One)),
        (Zero, R) => (Zero, One, Some(Zero)),
        (R, One) => (Zero, One, Some(One)),
        (K, Zero) => (Zero, K, None),
        (K, One) => (R, Zero, None),
        _ => return None,
    })
}

/// Candidates when the right side is `\1 /0`, in enumeration order.
const INTERESTING: [(BranchKind, Label, Label, Option<Label>); 4] = [
    (BranchKind::Equivariant, Zero, One, None),
    (BranchKind::ShiftZero, R, Zero, Some(Zero)),
    (BranchKind::ShiftOne, One, R, Some(One)),
    (BranchKind::TopK, One, K, None),
];

fn invariant(p: &PuzzlePath, what: String) -> Error {
    Error::Invariant(format!("path {p}: {what}"))
}

/// Every legal next piece for a non-final path, with the resulting path.
pub fn legal_branches(p: &PuzzlePath) -> Result<Vec<(Branch, PuzzlePath)>> {
    let pos = p.next_fill_position();
    let Some(k) = p.kink_index() else {
        return Ok(Vec::new());
    };
    let edges = p.edges();
    let (kink, next) = (edges[k], edges[k + 1]);
    let top = kink.from;
    let mut out = Vec::new();

    let checked = |kind: BranchKind, new: &[Step], piece: Piece| -> Result<(Branch, PuzzlePath)> {
        let child = p.replace_kink_pair(new);
        let v = child.validate();
        if !v.is_empty() {
            return Err(invariant(p, format!("{kind} at {pos} gives invalid path {child}: {}", v[0])));
        }
        Ok((Branch { kind, pos, piece }, child))
    };

    match pos {
        FillPos::Done => {}
        FillPos::Triangle(_) => {
            let new_sw = triangle_rule(kink.label, next.label).ok_or_else(|| {
                invariant(p, format!("no triangle has right side \\{} and bottom {}", kink.label, next.label))
            })?;
            let piece = Piece {
                pos,
                kind: BranchKind::Boring,
                top,
                right: (kink.label, next.label),
                new_sw,
                new_se: None,
                middle: None,
            };
            out.push(checked(BranchKind::Boring, &[Step::new(Dir::SW, new_sw)], piece)?);
        }
        FillPos::Rhombus(..) if (kink.label, next.label) != (One, Zero) => {
            let (sw, se, middle) = boring_rule(kink.label, next.label).ok_or_else(|| {
                invariant(p, format!("no rhombus has right side \\{} /{}", kink.label, next.label))
            })?;
            let piece = Piece {
                pos,
                kind: BranchKind::Boring,
                top,
                right: (kink.label, next.label),
                new_sw: sw,
                new_se: Some(se),
                middle,
            };
            out.push(checked(
                BranchKind::Boring,
                &[Step::new(Dir::SW, sw), Step::new(Dir::SE, se)],
                piece,
            )?);
        }
        FillPos::Rhombus(..) => {
            for (kind, sw, se, middle) in INTERESTING {
                let child = p.replace_kink_pair(&[Step::new(Dir::SW, sw), Step::new(Dir::SE, se)]);
                let legal = kind == BranchKind::Equivariant || child.is_valid();
                if !legal {
                    continue;
                }
                let piece = Piece {
                    pos,
                    kind,
                    top,
                    right: (One, Zero),
                    new_sw: sw,
                    new_se: Some(se),
                    middle,
                };
                out.push(checked(kind, &[Step::new(Dir::SW, sw), Step::new(Dir::SE, se)], piece)?);
            }
            let has = |k: BranchKind| out.iter().any(|(b, _)| b.kind == k);
            let (s0, s1, tk) = (has(BranchKind::ShiftZero), has(BranchKind::ShiftOne), has(BranchKind::TopK));
            if !(s0 || s1) {
                return Err(invariant(p, format!("no shift branch is legal at {pos}")));
            }
            if tk != (s0 && s1) {
                return Err(invariant(
                    p,
                    format!("top K legal = {tk} but shifts legal = ({s0}, {s1}) at {pos}"),
                ));
            }
        }
    }
    Ok(out)
}

/// A completed filling as seen by a leaf callback.
pub struct Leaf<'a> {
    pub lambda: Word,
    pub weight: Option<&'a Coeff>,
    pub pieces: &'a [Piece],
}

/// Depth-first exploration of all fillings of an initial path.
#[derive(Clone, Copy)]
pub struct Enumerator<'w> {
    /// Theory whose weights are multiplied along the way; zero-weight
    /// branches are not expanded. `None` keeps every branch.
    pub theory: Option<Theory>,
    pub weights: &'w dyn WeightTable,
    pub parallel: bool,
}

const MAX_PARALLEL_SPLITS: usize = 10;

impl<'w> Enumerator<'w> {
    pub fn new(theory: Option<Theory>) -> Enumerator<'static> {
        Enumerator {
            theory,
            weights: &StandardWeights,
            parallel: true,
        }
    }

    pub fn with_weights(mut self, weights: &'w dyn WeightTable) -> Self {
        self.weights = weights;
        self
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    /// Folds `leaf` over every completed filling, merging with `merge`.
    pub fn fold<T, L, M>(&self, mu: &Word, nu: &Word, leaf: &L, merge: &M) -> Result<T>
    where
        T: Send + Default,
        L: Fn(Leaf<'_>) -> Result<T> + Sync,
        M: Fn(T, T) -> T + Sync,
    {
        let start = PuzzlePath::initial(mu, nu)?;
        if !richardson_nonempty(mu, nu) {
            return Ok(T::default());
        }
        let n = start.n();
        let weight = self.theory.map(|t| Coeff::one(t, n));
        self.go(start, weight, &mut Vec::new(), 0, leaf, merge)
    }

    fn go<T, L, M>(
        &self,
        path: PuzzlePath,
        weight: Option<Coeff>,
        pieces: &mut Vec<Piece>,
        splits: usize,
        leaf: &L,
        merge: &M,
    ) -> Result<T>
    where
        T: Send + Default,
        L: Fn(Leaf<'_>) -> Result<T> + Sync,
        M: Fn(T, T) -> T + Sync,
    {
        if path.is_final() {
            let lambda = path
                .nw_word()
                .ok_or_else(|| invariant(&path, "final path carries a non 0/1 label".into()))?;
            return leaf(Leaf {
                lambda,
                weight: weight.as_ref(),
                pieces,
            });
        }
        let n = path.n();
        let mut children = Vec::new();
        for (b, child) in legal_branches(&path)? {
            let w = match (self.theory, &weight) {
                (Some(t), Some(acc)) => {
                    let (i, j) = match b.pos {
                        FillPos::Rhombus(i, j) => (i, j),
                        _ => (0, 0),
                    };
                    let f = if b.kind == BranchKind::Boring {
                        None
                    } else {
                        Some(self.weights.weight(t, b.kind, i, j, n))
                    };
                    match f {
                        None => Some(acc.clone()),
                        Some(f) if f.is_zero() => continue,
                        Some(f) => Some(acc.mul(&f)),
                    }
                }
                _ => None,
            };
            children.push((b, child, w));
        }

        if self.parallel && children.len() > 1 && splits < MAX_PARALLEL_SPLITS {
            let base: &Vec<Piece> = pieces;
            return children
                .into_par_iter()
                .map(|(b, child, w)| {
                    let mut local = base.clone();
                    local.push(b.piece);
                    self.go(child, w, &mut local, splits + 1, leaf, merge)
                })
                .try_reduce(T::default, |a, b| Ok(merge(a, b)));
        }

        let mut acc = T::default();
        for (b, child, w) in children {
            pieces.push(b.piece);
            let r = self.go(child, w, pieces, splits, leaf, merge);
            pieces.pop();
            acc = merge(acc, r?);
        }
        Ok(acc)
    }
}

/// Structure constants of one theory, keyed by the NW word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constants {
    pub theory: Theory,
    pub coefficients: BTreeMap<Word, Coeff>,
    /// Fillings with nonzero weight.
    pub puzzle_count: usize,
}

#[derive(Default)]
struct Acc {
    coefficients: BTreeMap<Word, Coeff>,
    count: usize,
}

fn merge_acc(mut a: Acc, b: Acc) -> Acc {
    for (k, v) in b.coefficients {
        match a.coefficients.get_mut(&k) {
            Some(x) => *x = x.add(&v),
            None => {
                a.coefficients.insert(k, v);
            }
        }
    }
    a.count += b.count;
    a
}

pub fn structure_constants_with(
    t: Theory,
    mu: &Word,
    nu: &Word,
    enumerator: Enumerator<'_>,
) -> Result<Constants> {
    check_pair(mu, nu)?;
    let e = Enumerator {
        theory: Some(t),
        ..enumerator
    };
    let acc = e.fold(
        mu,
        nu,
        &|leaf: Leaf<'_>| {
            let w = leaf.weight.expect("theory set").clone();
            Ok(Acc {
                coefficients: BTreeMap::from([(leaf.lambda, w)]),
                count: 1,
            })
        },
        &merge_acc,
    )?;
    let mut coefficients = acc.coefficients;
    coefficients.retain(|_, c| !c.is_zero());
    Ok(Constants {
        theory: t,
        coefficients,
        puzzle_count: acc.count,
    })
}

/// `c_{lambda mu}^nu` for every `lambda`, with nonzero entries only.
pub fn structure_constants(t: Theory, mu: &Word, nu: &Word) -> Result<BTreeMap<Word, Coeff>> {
    Ok(structure_constants_with(t, mu, nu, Enumerator::new(Some(t)))?.coefficients)
}

/// All completed puzzles, optionally only those with NW word `lambda` and
/// only those of nonzero weight in `theory`. Sorted.
pub fn enumerate_puzzles(
    mu: &Word,
    nu: &Word,
    lambda: Option<&Word>,
    theory: Option<Theory>,
) -> Result<Vec<Puzzle>> {
    check_pair(mu, nu)?;
    let n = mu.len();
    let mut out: Vec<Puzzle> = Enumerator::new(theory).fold(
        mu,
        nu,
        &|leaf: Leaf<'_>| {
            if lambda.is_some_and(|l| *l != leaf.lambda) {
                return Ok(Vec::new());
            }
            Ok(vec![Puzzle {
                n,
                mu: mu.clone(),
                nu: nu.clone(),
                lambda: leaf.lambda,
                pieces: leaf.pieces.to_vec(),
            }])
        },
        &|mut a: Vec<Puzzle>, b: Vec<Puzzle>| {
            a.extend(b);
            a
        },
    )?;
    out.sort_by(|a, b| (&a.lambda, &a.pieces).cmp(&(&b.lambda, &b.pieces)));
    Ok(out)
}
