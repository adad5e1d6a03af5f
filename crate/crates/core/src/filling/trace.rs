//! The degeneration tree: every filling step annotated with the geometry
//! of its path, optionally checked against the expected relations.

use serde::Serialize;

use super::{legal_branches, Theory, StandardWeights, WeightTable};
use crate::board::{check_pair, richardson_nonempty, BranchKind, FillPos, PuzzlePath};
use crate::error::{Error, Result};
use crate::interval::{covers, nontrivial_conditions, Condition, DotSet, RankMatrix};
use crate::pink::{path_codim, path_to_rank};
use crate::words::Word;

#[derive(Debug, Clone, Serialize)]
pub struct TraceNode {
    pub path: String,
    /// Branch taken from the parent.
    pub branch: Option<BranchKind>,
    pub position: Option<FillPos>,
    /// Weight of that branch in each theory.
    pub weights: Vec<(Theory, String)>,
    pub dots: DotSet,
    #[serde(skip)]
    pub rank: RankMatrix,
    /// Essential conditions that are not vacuous for `k`-planes.
    pub conditions: Vec<Condition>,
    pub envelope: (Word, Word),
    pub codim: usize,
    pub lambda: Option<Word>,
    pub children: Vec<TraceNode>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceReport {
    pub root: TraceNode,
    pub nodes: usize,
    /// Violated relations, each naming the offending node.
    pub failures: Vec<String>,
}

fn build(path: PuzzlePath, k: usize, branch: Option<(BranchKind, FillPos)>) -> Result<TraceNode> {
    let n = path.n();
    let (dots, rank) = path_to_rank(&path)?;
    let weights = match branch {
        Some((kind, pos)) => {
            let (i, j) = match pos {
                FillPos::Rhombus(i, j) => (i, j),
                _ => (0, 0),
            };
            Theory::ALL
                .iter()
                .map(|&t| {
                    let w = if kind == BranchKind::Boring {
                        super::Coeff::one(t, n)
                    } else {
                        StandardWeights.weight(t, kind, i, j, n)
                    };
                    (t, w.render())
                })
                .collect()
        }
        None => Vec::new(),
    };
    let mut children = Vec::new();
    for (b, child) in legal_branches(&path)? {
        children.push(build(child, k, Some((b.kind, b.pos)))?);
    }
    Ok(TraceNode {
        path: path.to_string(),
        branch: branch.map(|b| b.0),
        position: branch.map(|b| b.1),
        weights,
        conditions: nontrivial_conditions(&dots, k),
        envelope: dots.envelope(),
        codim: path_codim(&path),
        lambda: path.nw_word(),
        dots,
        rank,
        children,
    })
}

fn count(node: &TraceNode) -> usize {
    1 + node.children.iter().map(count).sum::<usize>()
}

fn check(node: &TraceNode, n: usize, k: usize, failures: &mut Vec<String>) {
    let at = |what: String| format!("node {}: {what}", node.path);
    if node.dots.len() != n - k {
        failures.push(at(format!("{} pink dots, expected {}", node.dots.len(), n - k)));
    }
    let env = node.dots.envelope_codim();
    if node.codim != env {
        failures.push(at(format!("path codimension {} but envelope codimension {env}", node.codim)));
    }
    if let Some(lambda) = &node.lambda {
        if node.conditions.iter().any(|c| c.cell.0 != 1) {
            failures.push(at(format!("final path {lambda} has a condition off the first row")));
        }
    }

    let child = |kind: BranchKind| node.children.iter().find(|c| c.branch == Some(kind));
    for c in &node.children {
        if c.branch == Some(BranchKind::Boring) && c.dots != node.dots {
            failures.push(at(format!("boring step to {} changed the dots", c.path)));
        }
    }
    if let Some(eq) = child(BranchKind::Equivariant) {
        if !covers(&eq.dots).contains(&node.dots) {
            failures.push(at(format!("not a cover of the equivariant child {}", eq.dots)));
        }
        for kind in [BranchKind::ShiftZero, BranchKind::ShiftOne] {
            if let Some(s) = child(kind) {
                if !covers(&eq.dots).contains(&s.dots) {
                    failures.push(at(format!("{kind} child {} is not a cover of {}", s.dots, eq.dots)));
                }
            }
        }
        if let Some(tk) = child(BranchKind::TopK) {
            match (child(BranchKind::ShiftZero), child(BranchKind::ShiftOne)) {
                (Some(s0), Some(s1)) => match s0.rank.min(&s1.rank) {
                    Ok(m) if m == tk.rank => {}
                    Ok(_) => failures.push(at("top K child is not the intersection of the shifts".into())),
                    Err(e) => failures.push(at(format!("minimum of the shift ranks: {e}"))),
                },
                _ => failures.push(at("top K child without both shifts".into())),
            }
        }
    }
    for c in &node.children {
        check(c, n, k, failures);
    }
}

/// Builds the full tree for `(mu, nu)`; with `verify`, records every
/// violated relation.
pub fn trace(mu: &Word, nu: &Word, verify: bool) -> Result<TraceReport> {
    check_pair(mu, nu)?;
    if !richardson_nonempty(mu, nu) {
        return Err(Error::Malformed(format!(
            "the Richardson variety for {mu}, {nu} is empty; there is nothing to trace"
        )));
    }
    let (n, k) = (mu.len(), mu.ones());
    let root = build(PuzzlePath::initial(mu, nu)?, k, None)?;
    let mut failures = Vec::new();
    if verify {
        if root.envelope != (mu.clone(), nu.clone()) || root.codim != 0 {
            failures.push(format!(
                "initial path: envelope ({}, {}) codim {}, expected ({mu}, {nu}) codim 0",
                root.envelope.0, root.envelope.1, root.codim
            ));
        }
        check(&root, n, k, &mut failures);
    }
    Ok(TraceReport {
        nodes: count(&root),
        root,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn conds(node: &TraceNode) -> Vec<String> {
        node.conditions.iter().map(ToString::to_string).collect()
    }

    fn child(node: &TraceNode, kind: BranchKind) -> &TraceNode {
        node.children.iter().find(|c| c.branch == Some(kind)).unwrap()
    }

    /// Walks boring steps down to the first interesting split.
    fn split(mut node: &TraceNode) -> &TraceNode {
        while node.children.len() == 1 {
            node = &node.children[0];
        }
        node
    }

    #[test]
    fn worked_example_tree() {
        let r = trace(&w("0101"), &w("1010"), true).unwrap();
        assert!(r.failures.is_empty(), "{:?}", r.failures);
        assert_eq!(conds(&r.root), ["(1,2) r<=1", "(3,4) r<=1"]);

        let top = split(&r.root);
        assert_eq!(top.dots, r.root.dots);
        assert_eq!(top.children.len(), 4);
        assert!(top.children.iter().all(|c| c.position == Some(FillPos::Rhombus(2, 4))));

        let eq = child(top, BranchKind::Equivariant);
        assert_eq!(eq.dots.to_string(), "1,2;2,4");
        assert_eq!(conds(eq), ["(1,2) r<=1"]);
        assert_eq!(eq.envelope, (w("0011"), w("1010")));

        assert_eq!(conds(child(top, BranchKind::ShiftZero)), ["(2,2) r<=0"]);
        assert_eq!(conds(child(top, BranchKind::ShiftOne)), ["(1,3) r<=1"]);
        let tk = child(top, BranchKind::TopK);
        assert_eq!(conds(tk), ["(2,2) r<=0", "(1,3) r<=1"]);
        assert_eq!(tk.weights.iter().find(|(t, _)| *t == Theory::K).unwrap().1, "-1");
    }

    #[test]
    fn leaves_carry_opposite_schubert_conditions() {
        let r = trace(&w("0101"), &w("1010"), true).unwrap();
        let mut leaves = Vec::new();
        let mut stack = vec![&r.root];
        while let Some(n) = stack.pop() {
            if let Some(l) = &n.lambda {
                assert_eq!(n.envelope.1, *l);
                leaves.push((l.to_string(), conds(n)));
            }
            stack.extend(n.children.iter());
        }
        leaves.sort();
        leaves.dedup();
        assert_eq!(
            leaves,
            [
                ("0101".to_string(), vec!["(1,1) r<=0".to_string(), "(1,3) r<=1".to_string()]),
                ("0110".to_string(), vec!["(1,1) r<=0".to_string()]),
                ("1001".to_string(), vec!["(1,3) r<=1".to_string()]),
                ("1010".to_string(), vec!["(1,2) r<=1".to_string()]),
            ]
        );
    }

    #[test]
    fn empty_richardson_is_rejected() {
        assert!(trace(&w("10"), &w("01"), false).unwrap_err().is_input_error());
    }

    #[test]
    fn exhaustive_small() {
        for n in 1..=4 {
            for k in 0..=n {
                for mu in Word::all(n, k) {
                    for nu in Word::all(n, k) {
                        if !richardson_nonempty(&mu, &nu) {
                            continue;
                        }
                        let r = trace(&mu, &nu, true).unwrap();
                        assert!(r.failures.is_empty(), "{mu} {nu}: {:?}", r.failures);
                    }
                }
            }
        }
    }
}
