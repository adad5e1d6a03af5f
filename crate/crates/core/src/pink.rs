//! Pink rays and dots: the dot set, hence the interval rank matrix, attached
//! to a puzzle path.

use std::fmt;

use serde::Serialize;

use crate::board::{Dir, Label, PathEdge, PuzzlePath};
use crate::error::{Error, Result};
use crate::interval::{DotSet, RankMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RayDir {
    SW,
    NW,
    SE,
    NE,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RaySource {
    /// Index of the path step the ray starts on.
    Step(usize),
    /// Bottom edge right of the path, by column.
    Bottom(usize),
}

/// Why a ray exists, when that matters for pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RayRole {
    Plain,
    /// The kink's own ray.
    Kink,
    /// The NW ray a kink R or K switches on below itself.
    Triggered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Ray {
    pub side: Side,
    pub dir: RayDir,
    pub source: RaySource,
    /// `i` for SW and NE rays, `j` for NW and SE rays.
    pub coord: usize,
    pub role: RayRole,
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let axis = match self.dir {
            RayDir::SW | RayDir::NE => "i",
            RayDir::NW | RayDir::SE => "j",
        };
        let src = match self.source {
            RaySource::Step(p) => format!("step {}", p + 1),
            RaySource::Bottom(c) => format!("bottom {c}"),
        };
        write!(f, "{:?} {:?} {axis}={} from {src}", self.side, self.dir, self.coord)?;
        if self.role != RayRole::Plain {
            write!(f, " ({:?})", self.role)?;
        }
        Ok(())
    }
}

fn ray(side: Side, dir: RayDir, source: RaySource, coord: usize, role: RayRole) -> Ray {
    Ray {
        side,
        dir,
        source,
        coord,
        role,
    }
}

/// Index of the nearest `/0` before the kink, if the kink is `\1`.
fn ne_partner(edges: &[PathEdge], kink: Option<usize>) -> Option<usize> {
    let k = kink?;
    if edges[k].label != Label::One {
        return None;
    }
    edges[..k].iter().rposition(|e| e.is(Dir::SW, Label::Zero))
}

pub fn place_rays(p: &PuzzlePath) -> Vec<Ray> {
    let edges = p.edges();
    let kink = p.kink_index();
    let mut rays = Vec::new();
    for (idx, e) in edges.iter().enumerate() {
        let src = RaySource::Step(idx);
        let is_kink = Some(idx) == kink;
        match (e.dir, e.label) {
            (Dir::SE, Label::Zero) => {
                let role = if is_kink { RayRole::Kink } else { RayRole::Plain };
                rays.push(ray(Side::Left, RayDir::SW, src, e.i, role));
            }
            (Dir::SE, Label::R | Label::K) if is_kink => {
                rays.push(ray(Side::Left, RayDir::SW, src, e.i, RayRole::Kink));
                if let Some(t) = edges[idx + 1..]
                    .iter()
                    .position(|f| f.label == Label::One && f.dir != Dir::SE)
                {
                    let t = idx + 1 + t;
                    rays.push(ray(Side::Left, RayDir::NW, RaySource::Step(t), edges[t].j, RayRole::Triggered));
                }
            }
            (Dir::W, Label::Zero) | (Dir::SW, Label::R) => {
                rays.push(ray(Side::Left, RayDir::NW, src, e.j, RayRole::Plain));
            }
            (Dir::SW, Label::Zero) => {
                rays.push(ray(Side::Right, RayDir::SE, src, e.j, RayRole::Plain));
            }
            _ => {}
        }
    }
    let kink_ne = ne_partner(&edges, kink).is_some();
    if kink_ne {
        let k = kink.expect("kink present");
        rays.push(ray(Side::Right, RayDir::NE, RaySource::Step(k), edges[k].i, RayRole::Kink));
    }
    let se = rays.iter().filter(|r| r.dir == RayDir::SE).count();
    let c = p.bottom_len();
    for m in 1..=se - usize::from(kink_ne) {
        rays.push(ray(Side::Right, RayDir::NE, RaySource::Bottom(c + m), c + m, RayRole::Plain));
    }
    rays.sort_by_key(|r| match r.source {
        RaySource::Step(s) => (s, 0, r.role == RayRole::Triggered),
        RaySource::Bottom(b) => (usize::MAX / 2, b, false),
    });
    rays
}

fn step_of(r: &Ray) -> usize {
    match r.source {
        RaySource::Step(s) => s,
        RaySource::Bottom(_) => usize::MAX,
    }
}

fn zip_sorted(mut rows: Vec<usize>, mut cols: Vec<usize>, what: &str, dots: &mut Vec<(usize, usize)>) -> Result<()> {
    if rows.len() != cols.len() {
        return Err(Error::Invariant(format!(
            "{what}: {} rays cannot be paired with {}",
            rows.len(),
            cols.len()
        )));
    }
    rows.sort_unstable();
    cols.sort_unstable();
    dots.extend(rows.into_iter().zip(cols));
    Ok(())
}

/// Pairs the rays of `p` into dots.
pub fn pair_dots(p: &PuzzlePath, rays: &[Ray]) -> Result<DotSet> {
    let kink_label = p.kink_label();
    let mut dots = Vec::new();

    let mut sw: Vec<&Ray> = rays.iter().filter(|r| r.dir == RayDir::SW).collect();
    let mut nw: Vec<&Ray> = rays.iter().filter(|r| r.dir == RayDir::NW).collect();
    if let Some(pos) = sw.iter().position(|r| r.role == RayRole::Kink) {
        let kr = sw.remove(pos);
        let skip = usize::from(kink_label == Some(Label::K));
        let mut after: Vec<usize> = (0..nw.len()).filter(|&x| step_of(nw[x]) > step_of(kr)).collect();
        after.sort_by_key(|&x| (step_of(nw[x]), nw[x].role != RayRole::Triggered));
        let &partner = after.get(skip).ok_or_else(|| {
            Error::Invariant(format!("kink ray {kr} has no partner below it"))
        })?;
        dots.push((kr.coord, nw[partner].coord));
        nw.remove(partner);
    }
    zip_sorted(
        sw.iter().map(|r| r.coord).collect(),
        nw.iter().map(|r| r.coord).collect(),
        "left side",
        &mut dots,
    )?;

    let mut ne: Vec<&Ray> = rays.iter().filter(|r| r.dir == RayDir::NE).collect();
    let mut se: Vec<&Ray> = rays.iter().filter(|r| r.dir == RayDir::SE).collect();
    if let Some(pos) = ne.iter().position(|r| r.role == RayRole::Kink) {
        let kr = ne.remove(pos);
        let partner = se
            .iter()
            .enumerate()
            .filter(|(_, r)| step_of(r) < step_of(kr))
            .max_by_key(|(_, r)| step_of(r))
            .map(|(x, _)| x)
            .ok_or_else(|| Error::Invariant(format!("kink ray {kr} has no partner above it")))?;
        dots.push((kr.coord, se[partner].coord));
        se.remove(partner);
    }
    zip_sorted(
        ne.iter().map(|r| r.coord).collect(),
        se.iter().map(|r| r.coord).collect(),
        "right side",
        &mut dots,
    )?;

    DotSet::new(p.n(), dots.clone())
        .map_err(|e| Error::Invariant(format!("pink dots {dots:?} of path {p}: {e}")))
}

pub fn path_to_rank(p: &PuzzlePath) -> Result<(DotSet, RankMatrix)> {
    let d = pair_dots(p, &place_rays(p))?;
    let r = RankMatrix::from_dots(&d);
    Ok((d, r))
}

/// Codimension of the path's variety inside its Richardson envelope.
pub fn path_codim(p: &PuzzlePath) -> usize {
    let edges = p.edges();
    let is = |e: &PathEdge, l: Label| e.is(Dir::SW, l);
    let count = |range: &[PathEdge], l: Label| range.iter().filter(|e| is(e, l)).count();

    let mut total = 0;
    let mut r_seen = 0;
    for e in &edges {
        if is(e, Label::R) {
            r_seen += 1;
        } else if is(e, Label::Zero) {
            total += r_seen;
        }
    }

    let Some(k) = p.kink_index() else {
        return total;
    };
    let (above, below) = (&edges[..k], &edges[k + 1..]);
    match edges[k].label {
        Label::One => {
            if count(above, Label::Zero) > 0 {
                total += count(below, Label::Zero);
            }
        }
        Label::Zero => total += count(above, Label::R),
        Label::R | Label::K => {
            total += count(above, Label::R);
            if let Some(x) = below.iter().position(|e| is(e, Label::One)) {
                total += count(&below[x + 1..], Label::Zero);
            }
            // the K-piece sits on an intersection of two shift varieties
            if edges[k].label == Label::K {
                total += 1;
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Word;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn coords(rays: &[Ray], dir: RayDir) -> Vec<usize> {
        let mut v: Vec<usize> = rays.iter().filter(|r| r.dir == dir).map(|r| r.coord).collect();
        v.sort();
        v
    }

    #[test]
    fn initial_path_rays_and_dots() {
        let p = PuzzlePath::initial(&w("0101"), &w("1010")).unwrap();
        let rays = place_rays(&p);
        assert_eq!(coords(&rays, RayDir::SW), vec![1, 3]);
        assert_eq!(coords(&rays, RayDir::NW), vec![2, 4]);
        assert!(rays.iter().all(|r| r.side == Side::Left));
        assert_eq!(pair_dots(&p, &rays).unwrap(), DotSet::parse("1,2;3,4", 4).unwrap());
        assert_eq!(path_codim(&p), 0);
    }

    #[test]
    fn final_path_rays_and_dots() {
        let p = PuzzlePath::final_path(&w("1010"));
        let rays = place_rays(&p);
        assert_eq!(coords(&rays, RayDir::SE), vec![2, 4]);
        assert_eq!(coords(&rays, RayDir::NE), vec![1, 2]);
        assert!(rays.iter().all(|r| r.side == Side::Right));
        assert_eq!(pair_dots(&p, &rays).unwrap(), DotSet::parse("1,2;2,4", 4).unwrap());
        assert_eq!(path_codim(&p), 0);
    }

    #[test]
    fn kink_k_rays() {
        use crate::board::Step;
        // n = 3: \1 then kink \K, /1, /R... built by hand: \0 \K /1 -0 -0 would
        // need the K column; use the general shape SE SE(kink) SW W.
        let steps = vec![
            Step::new(Dir::SE, Label::Zero),
            Step::new(Dir::SE, Label::K),
            Step::new(Dir::SW, Label::One),
            Step::new(Dir::W, Label::Zero),
            Step::new(Dir::W, Label::Zero),
        ];
        let p = PuzzlePath::from_steps(3, steps);
        let rays = place_rays(&p);
        let kink: Vec<_> = rays.iter().filter(|r| r.role != RayRole::Plain).collect();
        assert_eq!(kink.len(), 2);
        assert_eq!(kink[0].dir, RayDir::SW);
        assert_eq!(kink[1].dir, RayDir::NW);
        assert_eq!(kink[1].source, RaySource::Step(2));
    }
}
