//! Text and SVG pictures of completed puzzles.

use std::fmt::Write;

use super::{BranchKind, EdgeId, Label, Puzzle};

fn label_or_dot(l: Option<&Label>) -> String {
    l.map_or_else(|| ".".to_string(), Label::to_string)
}

/// One text row per row of the triangle. Each upward unit triangle is drawn
/// as `L/H\R`: its `/` label, its bottom label and its `\` label.
pub fn render_ascii(pz: &Puzzle) -> String {
    let labels = pz.edge_labels();
    let mut out = String::new();
    for a in 1..=pz.n {
        out.push_str(&" ".repeat(3 * (pz.n - a)));
        let cells: Vec<String> = (0..a)
            .map(|b| {
                format!(
                    "{}/{}\\{}",
                    label_or_dot(labels.get(&EdgeId::Sw(a - 1, b))),
                    label_or_dot(labels.get(&EdgeId::H(a, b + 1))),
                    label_or_dot(labels.get(&EdgeId::Se(a - 1, b))),
                )
            })
            .collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

const SIDE: f64 = 60.0;
const MARGIN: f64 = 20.0;

fn point(n: usize, (a, b): (usize, usize)) -> (f64, f64) {
    let x = MARGIN + SIDE * (b as f64 + (n as f64 - a as f64) / 2.0);
    let y = MARGIN + SIDE * a as f64 * 3f64.sqrt() / 2.0;
    (x, y)
}

fn fill(kind: BranchKind, has_k: bool) -> &'static str {
    if has_k {
        return "#f2a0a0";
    }
    match kind {
        BranchKind::Boring => "#f5f5f0",
        BranchKind::Equivariant => "#ffd27a",
        BranchKind::ShiftZero | BranchKind::ShiftOne => "#c9dcf0",
        BranchKind::TopK => "#f2a0a0",
    }
}

/// A standalone SVG document. Equivariant pieces are amber, pieces touching
/// a K label are red.
pub fn render_svg(pz: &Puzzle) -> String {
    let n = pz.n;
    let width = 2.0 * MARGIN + SIDE * n as f64;
    let height = 2.0 * MARGIN + SIDE * n as f64 * 3f64.sqrt() / 2.0;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    )
    .unwrap();
    writeln!(
        s,
        r#"<title>lambda={} mu={} nu={}</title>"#,
        pz.lambda, pz.mu, pz.nu
    )
    .unwrap();
    for pc in &pz.pieces {
        let (a, b) = pc.top;
        let verts: Vec<(usize, usize)> = if pc.new_se.is_some() {
            vec![(a, b), (a + 1, b + 1), (a + 2, b + 1), (a + 1, b)]
        } else {
            vec![(a, b), (a + 1, b + 1), (a + 1, b)]
        };
        let has_k = pc.right.0 == Label::K || pc.new_se == Some(Label::K);
        let pts: Vec<String> = verts
            .iter()
            .map(|&v| {
                let (x, y) = point(n, v);
                format!("{x:.1},{y:.1}")
            })
            .collect();
        writeln!(
            s,
            r##"<polygon points="{}" fill="{}" stroke="#333" stroke-width="1"/>"##,
            pts.join(" "),
            fill(pc.kind, has_k)
        )
        .unwrap();
    }
    for (id, label) in pz.edge_labels() {
        let (p, q) = match id {
            EdgeId::Se(a, b) => ((a, b), (a + 1, b + 1)),
            EdgeId::Sw(a, b) => ((a, b), (a + 1, b)),
            EdgeId::H(a, b) => ((a, b - 1), (a, b)),
        };
        let (x1, y1) = point(n, p);
        let (x2, y2) = point(n, q);
        writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" font-family="monospace" font-size="14" text-anchor="middle" dominant-baseline="middle">{label}</text>"#,
            (x1 + x2) / 2.0,
            (y1 + y2) / 2.0
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}
