//! The size-`n` puzzle triangle, labelled puzzle paths and completed puzzles.
//!
//! Vertices are `v(a, b)` with `0 <= b <= a <= n`; `a` is the row counted
//! from the apex `v(0, 0)`. A path walks from the apex to the bottom-left
//! corner `v(n, 0)` using three kinds of step:
//!
//! * `SE`: `(a, b) -> (a+1, b+1)`, drawn `\`,
//! * `SW`: `(a, b) -> (a+1, b)`, drawn `/`,
//! * `W`:  `(a, b) -> (a, b-1)`, along the bottom.
//!
//! Every edge carries two column coordinates: `i`, preserved by SW and NE
//! motion, and `j = b + n - a`, preserved by SE and NW motion.

mod render;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::Word;

pub use render::{render_ascii, render_svg};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    R,
    K,
}

impl Label {
    pub fn from_bit(b: bool) -> Label {
        if b {
            Label::One
        } else {
            Label::Zero
        }
    }

    pub fn as_bit(self) -> Option<bool> {
        match self {
            Label::Zero => Some(false),
            Label::One => Some(true),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::Zero => "0",
            Label::One => "1",
            Label::R => "R",
            Label::K => "K",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dir {
    SE,
    SW,
    W,
}

impl Dir {
    pub fn glyph(self) -> char {
        match self {
            Dir::SE => '\\',
            Dir::SW => '/',
            Dir::W => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub dir: Dir,
    pub label: Label,
}

impl Step {
    pub fn new(dir: Dir, label: Label) -> Step {
        Step { dir, label }
    }
}

/// One step of a path together with its position in the triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathEdge {
    pub dir: Dir,
    pub label: Label,
    /// Vertex the step starts from.
    pub from: (usize, usize),
    pub i: usize,
    pub j: usize,
    /// Whether the edge lies on the outer boundary of the triangle.
    pub boundary: bool,
}

impl PathEdge {
    pub fn is(&self, dir: Dir, label: Label) -> bool {
        self.dir == dir && self.label == label
    }
}

/// Where the next piece goes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FillPos {
    /// Bottom triangle in column `c`.
    Triangle(usize),
    /// Rhombus at `(i, j)`.
    Rhombus(usize, usize),
    Done,
}

impl fmt::Display for FillPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FillPos::Triangle(c) => write!(f, "triangle {c}"),
            FillPos::Rhombus(i, j) => write!(f, "rhombus ({i},{j})"),
            FillPos::Done => f.write_str("done"),
        }
    }
}

/// A violated validity condition, numbered 1 to 7; 0 is a malformed shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub index: u8,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.index, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PuzzlePath {
    n: usize,
    steps: Vec<Step>,
}

impl PuzzlePath {
    pub fn from_steps(n: usize, steps: Vec<Step>) -> PuzzlePath {
        PuzzlePath { n, steps }
    }

    /// `mu` down the NE side, then `nu` right to left along the bottom.
    pub fn initial(mu: &Word, nu: &Word) -> Result<PuzzlePath> {
        check_pair(mu, nu)?;
        let n = mu.len();
        let mut steps: Vec<Step> = mu
            .bits()
            .iter()
            .map(|&b| Step::new(Dir::SE, Label::from_bit(b)))
            .collect();
        steps.extend(
            nu.bits()
                .iter()
                .rev()
                .map(|&b| Step::new(Dir::W, Label::from_bit(b))),
        );
        Ok(PuzzlePath { n, steps })
    }

    /// The path down the NW side reading `lambda` from the bottom corner up.
    pub fn final_path(lambda: &Word) -> PuzzlePath {
        let steps = lambda
            .bits()
            .iter()
            .rev()
            .map(|&b| Step::new(Dir::SW, Label::from_bit(b)))
            .collect();
        PuzzlePath {
            n: lambda.len(),
            steps,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Steps with coordinates, or `None` if the walk leaves the triangle or
    /// does not end at the bottom-left corner.
    pub fn try_edges(&self) -> Option<Vec<PathEdge>> {
        let n = self.n;
        let (mut a, mut b) = (0usize, 0usize);
        let mut out = Vec::with_capacity(self.steps.len());
        for s in &self.steps {
            let from = (a, b);
            let (i, j, boundary) = match s.dir {
                Dir::SE => {
                    if a >= n {
                        return None;
                    }
                    let e = (b + 1, b + n - a, b == a);
                    a += 1;
                    b += 1;
                    e
                }
                Dir::SW => {
                    if a >= n {
                        return None;
                    }
                    let e = (b, b + n - a, b == 0);
                    a += 1;
                    e
                }
                Dir::W => {
                    if b == 0 || a != n {
                        return None;
                    }
                    let e = (b, b, true);
                    b -= 1;
                    e
                }
            };
            out.push(PathEdge {
                dir: s.dir,
                label: s.label,
                from,
                i,
                j,
                boundary,
            });
        }
        ((a, b) == (n, 0)).then_some(out)
    }

    pub fn edges(&self) -> Vec<PathEdge> {
        self.try_edges().expect("path stays inside the triangle")
    }

    /// Index of the kink, the last SE step.
    pub fn kink_index(&self) -> Option<usize> {
        self.steps.iter().rposition(|s| s.dir == Dir::SE)
    }

    pub fn kink_label(&self) -> Option<Label> {
        self.kink_index().map(|k| self.steps[k].label)
    }

    pub fn is_final(&self) -> bool {
        self.kink_index().is_none()
    }

    /// Number of bottom edges still on the path.
    pub fn bottom_len(&self) -> usize {
        self.steps.iter().filter(|s| s.dir == Dir::W).count()
    }

    /// The NW-side word of a final path.
    pub fn nw_word(&self) -> Option<Word> {
        if !self.is_final() || self.steps.len() != self.n {
            return None;
        }
        let bits: Option<Vec<bool>> = self.steps.iter().rev().map(|s| s.label.as_bit()).collect();
        bits.map(Word::from_bits)
    }

    /// Checks the shape and the seven labelling conditions.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let Some(edges) = self.try_edges() else {
            out.push(Violation {
                index: 0,
                detail: "steps do not trace a path from the apex to the bottom-left corner".into(),
            });
            return out;
        };
        if !shape_ok(&self.steps) {
            out.push(Violation {
                index: 0,
                detail: "step directions are not of the form SE* SW* SE? SW* W*".into(),
            });
        }
        let kink = self.kink_index();
        let mut fail = |index: u8, detail: String| out.push(Violation { index, detail });

        for (p, e) in edges.iter().enumerate() {
            if e.boundary && e.label.as_bit().is_none() {
                fail(1, format!("boundary step {} carries {}", p + 1, e.label));
            }
        }
        for (p, e) in edges.iter().enumerate() {
            if e.label == Label::K && Some(p) != kink {
                fail(2, format!("step {} carries K but is not the kink", p + 1));
            }
        }

        let lead = edges.iter().take_while(|e| e.dir == Dir::SE).count();
        let trail = edges.iter().rev().take_while(|e| e.dir == Dir::W).count();
        for t in 1..=lead.min(trail) {
            let se0 = edges[..t].iter().filter(|e| e.label == Label::Zero).count();
            let w0 = edges[edges.len() - t..]
                .iter()
                .filter(|e| e.label == Label::Zero)
                .count();
            if se0 < w0 {
                fail(3, format!("first {t} SE steps have {se0} zeros, last {t} W steps have {w0}"));
                break;
            }
        }

        let count = |d: Dir, l: Label| edges.iter().filter(|e| e.is(d, l)).count();
        let (se0, sw_r, w0) = (count(Dir::SE, Label::Zero), count(Dir::SW, Label::R), count(Dir::W, Label::Zero));
        if se0 != sw_r + w0 {
            fail(4, format!("{se0} \\0 steps but {sw_r} /R and {w0} -0 steps"));
        }

        if let Some(k) = kink {
            let after = &edges[k + 1..];
            let kl = edges[k].label;
            let first = |pred: &dyn Fn(&PathEdge) -> bool| after.iter().position(pred);
            let is_one = |e: &PathEdge| e.label == Label::One && e.dir != Dir::SE;
            let is_zeroish = |e: &PathEdge| e.is(Dir::SW, Label::R) || e.is(Dir::W, Label::Zero);
            let is_w1 = |e: &PathEdge| e.is(Dir::W, Label::One);

            if matches!(kl, Label::R | Label::K) {
                match first(&|e| is_one(e) || is_zeroish(e)) {
                    Some(p) if is_one(&after[p]) => {}
                    _ => fail(5, format!("kink {kl} is not followed by a 1 before any /R or -0")),
                }
            }
            if matches!(kl, Label::Zero | Label::K) {
                match first(&|e| is_zeroish(e) || is_w1(e)) {
                    Some(p) if is_zeroish(&after[p]) => {}
                    _ => fail(6, format!("kink {kl} is not followed by /R or -0 before any -1")),
                }
            }
            if kl == Label::K {
                let ok = match first(&|e| e.is(Dir::SW, Label::One) || is_zeroish(e) || is_w1(e)) {
                    Some(p) if after[p].is(Dir::SW, Label::One) => {
                        let rest = &after[p + 1..];
                        matches!(rest.iter().find(|e| is_zeroish(e) || is_w1(e)), Some(e) if is_zeroish(e))
                    }
                    _ => false,
                };
                if !ok {
                    fail(7, "kink K is not followed by /1, then /R or -0, before any -1".into());
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// The position the next piece fills.
    pub fn next_fill_position(&self) -> FillPos {
        let Some(k) = self.kink_index() else {
            return FillPos::Done;
        };
        let edges = self.edges();
        let kink = edges[k];
        match edges.get(k + 1).map(|e| e.dir) {
            Some(Dir::W) => FillPos::Triangle(kink.i),
            Some(Dir::SW) => FillPos::Rhombus(kink.i, kink.j),
            _ => unreachable!("the kink is the last SE step and the path ends on the bottom"),
        }
    }

    /// Replaces the kink and the step after it by `new`.
    pub(crate) fn replace_kink_pair(&self, new: &[Step]) -> PuzzlePath {
        let k = self.kink_index().expect("path has a kink");
        let mut steps = Vec::with_capacity(self.steps.len());
        steps.extend_from_slice(&self.steps[..k]);
        steps.extend_from_slice(new);
        steps.extend_from_slice(&self.steps[k + 2..]);
        PuzzlePath { n: self.n, steps }
    }
}

/// SE* SW* SE? SW* W*
fn shape_ok(steps: &[Step]) -> bool {
    let mut p = 0;
    let mut skip = |d: Dir| {
        while p < steps.len() && steps[p].dir == d {
            p += 1;
        }
    };
    skip(Dir::SE);
    skip(Dir::SW);
    let mut q = p;
    if q < steps.len() && steps[q].dir == Dir::SE {
        q += 1;
    }
    let rest = &steps[q..];
    let sw = rest.iter().take_while(|s| s.dir == Dir::SW).count();
    rest[sw..].iter().all(|s| s.dir == Dir::W)
}

impl fmt::Display for PuzzlePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}{}", s.dir.glyph(), s.label)?;
        }
        Ok(())
    }
}

/// Checks two boundary words live in the same Grassmannian.
pub fn check_pair(mu: &Word, nu: &Word) -> Result<()> {
    if mu.len() != nu.len() {
        return Err(Error::SizeMismatch(format!(
            "words {mu} and {nu} have different lengths"
        )));
    }
    if mu.ones() != nu.ones() {
        return Err(Error::OneCount {
            expected: mu.ones(),
            found: nu.ones(),
        });
    }
    if mu.is_empty() {
        return Err(Error::Malformed("words must be nonempty".into()));
    }
    Ok(())
}

/// Whether the initial path's Richardson variety is nonempty: the k-th zero
/// of `mu` sits no later than the k-th zero of `nu`. When it is empty every
/// structure constant vanishes and the filling has no completion.
pub fn richardson_nonempty(mu: &Word, nu: &Word) -> bool {
    mu.len() == nu.len()
        && mu.ones() == nu.ones()
        && mu
            .zero_positions()
            .iter()
            .zip(nu.zero_positions().iter())
            .all(|(a, b)| a <= b)
}

/// How a piece was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BranchKind {
    Boring,
    Equivariant,
    ShiftZero,
    ShiftOne,
    TopK,
}

impl BranchKind {
    pub const ALL: [BranchKind; 5] = [
        BranchKind::Boring,
        BranchKind::Equivariant,
        BranchKind::ShiftZero,
        BranchKind::ShiftOne,
        BranchKind::TopK,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BranchKind::Boring => "boring",
            BranchKind::Equivariant => "equivariant",
            BranchKind::ShiftZero => "shift0",
            BranchKind::ShiftOne => "shift1",
            BranchKind::TopK => "topK",
        }
    }
}

impl fmt::Display for BranchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A placed piece. `top` is the vertex the kink started from; for a
/// rhombus the new edges are the `/` from `top` and the `\` below it, for a
/// triangle only the `/`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Piece {
    pub pos: FillPos,
    pub kind: BranchKind,
    pub top: (usize, usize),
    /// Labels of the right side: the kink, then the `/` or bottom edge.
    pub right: (Label, Label),
    pub new_sw: Label,
    pub new_se: Option<Label>,
    /// Label of the horizontal diagonal, absent for K-pieces.
    pub middle: Option<Label>,
}

/// A completed puzzle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Puzzle {
    pub n: usize,
    pub mu: Word,
    pub nu: Word,
    pub lambda: Word,
    pub pieces: Vec<Piece>,
}

/// Identifies an edge of the triangle by its kind and start vertex (for a
/// horizontal edge, its right end).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeId {
    Se(usize, usize),
    Sw(usize, usize),
    H(usize, usize),
}

impl Puzzle {
    pub fn count_kind(&self, kind: BranchKind) -> usize {
        self.pieces.iter().filter(|p| p.kind == kind).count()
    }

    /// `(lambda, mu, nu)` read off the NW, NE and S sides.
    pub fn read_boundary(&self) -> Result<(Word, Word, Word)> {
        let expected = self.n + self.n * (self.n - 1) / 2;
        if self.pieces.len() != expected {
            return Err(Error::Malformed(format!(
                "puzzle has {} pieces, a complete one has {expected}",
                self.pieces.len()
            )));
        }
        let labels = self.edge_labels();
        let n = self.n;
        let read = |ids: Vec<EdgeId>| -> Result<Word> {
            ids.into_iter()
                .map(|id| {
                    labels
                        .get(&id)
                        .and_then(|l| l.as_bit())
                        .ok_or_else(|| Error::Malformed(format!("boundary edge {id:?} missing or not 0/1")))
                })
                .collect::<Result<Vec<bool>>>()
                .map(Word::from_bits)
        };
        let lambda = read((1..=n).map(|p| EdgeId::Sw(n - p, 0)).collect())?;
        let mu = read((1..=n).map(|p| EdgeId::Se(p - 1, p - 1)).collect())?;
        let nu = read((1..=n).map(|b| EdgeId::H(n, b)).collect())?;
        Ok((lambda, mu, nu))
    }

    /// Every labelled edge.
    pub fn edge_labels(&self) -> std::collections::BTreeMap<EdgeId, Label> {
        let mut m = std::collections::BTreeMap::new();
        for (p, &b) in self.mu.bits().iter().enumerate() {
            m.insert(EdgeId::Se(p, p), Label::from_bit(b));
        }
        for (p, &b) in self.nu.bits().iter().enumerate() {
            m.insert(EdgeId::H(self.n, p + 1), Label::from_bit(b));
        }
        for pc in &self.pieces {
            let (a, b) = pc.top;
            m.insert(EdgeId::Sw(a, b), pc.new_sw);
            if let Some(l) = pc.new_se {
                m.insert(EdgeId::Se(a + 1, b), l);
            }
            if let Some(l) = pc.middle {
                m.insert(EdgeId::H(a + 1, b + 1), l);
            }
        }
        m
    }
}
