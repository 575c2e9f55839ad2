//! Static SVG: drawings, derivative towers, and deleted-product tables.
//!
//! Output is deterministic for a fixed input. Graphs without coordinates are laid
//! out from their rotation system: the longest face of each component on a circle,
//! the other vertices relaxed to the barycentre of their neighbours.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::derivative::{decide_approximable, derive, detect_winding, LevelNote};
use crate::graph::{Instance, PlaneGraph};
use crate::obstruction::{obstruction, Obstruction, PaintedComplex, Side};
use crate::report::ObstructionTable;

const PANEL: f64 = 320.0;
const MARGIN: f64 = 30.0;
const PALETTE: [&str; 8] = ["#f6d6a8", "#c8e0f4", "#d4edc9", "#f2c6d6", "#e2d4f0", "#f7efb0", "#c9ece6", "#e8d9c5"];

fn svg_open(out: &mut String, width: f64, height: f64, class: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" class="{class}" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    out.push_str(
        "<style>.edge{stroke:#999;stroke-width:1.5}.walk{stroke:#c33;stroke-width:3;fill:none}\
         .vertex{fill:#222}.label{font:11px sans-serif}.cell{stroke:#777;stroke-width:0.5}\
         .black{fill:#333}.black-edge{stroke:#000;stroke-width:3}.parity{font:12px sans-serif;text-anchor:middle}\
         .note{font:12px sans-serif}</style>\n",
    );
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Vertex positions in the unit square.
pub fn layout(graph: &PlaneGraph) -> Vec<(f64, f64)> {
    let n = graph.vertex_count();
    let raw: Vec<(f64, f64)> = match graph.coords() {
        Some(pts) => pts
            .iter()
            .map(|p| (p.x.to_f64().unwrap_or(0.0), p.y.to_f64().unwrap_or(0.0)))
            .collect(),
        None => rotation_layout(graph),
    };
    if n == 0 {
        return raw;
    }
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &raw {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    raw.iter()
        .map(|&(x, y)| (0.5 + (x - (x0 + x1) / 2.0) / span, 0.5 + (y - (y0 + y1) / 2.0) / span))
        .collect()
}

fn rotation_layout(graph: &PlaneGraph) -> Vec<(f64, f64)> {
    let n = graph.vertex_count();
    let component = graph.components();
    let count = component.iter().copied().max().map_or(0, |c| c + 1);
    let faces = graph.trace_faces().faces;
    let mut pos = vec![(0.0, 0.0); n];
    let mut fixed = vec![false; n];
    for c in 0..count {
        let centre = (3.0 * c as f64, 0.0);
        let outer = faces
            .iter()
            .filter(|f| component[f[0].0] == c)
            .max_by_key(|f| (f.iter().map(|e| e.0).collect::<BTreeSet<_>>().len(), std::cmp::Reverse(f[0])));
        let mut ring: Vec<usize> = Vec::new();
        match outer {
            Some(face) => {
                for &(u, _) in face {
                    if !ring.contains(&u) {
                        ring.push(u);
                    }
                }
            }
            None => ring.extend((0..n).filter(|&v| component[v] == c)),
        }
        let k = ring.len() as f64;
        for (i, &v) in ring.iter().enumerate() {
            let angle = std::f64::consts::TAU * i as f64 / k;
            pos[v] = (centre.0 + angle.cos(), centre.1 + angle.sin());
            fixed[v] = true;
        }
        for v in (0..n).filter(|&v| component[v] == c && !fixed[v]) {
            pos[v] = centre;
        }
    }
    for _ in 0..200 {
        for v in 0..n {
            if fixed[v] || graph.degree(v) == 0 {
                continue;
            }
            let d = graph.degree(v) as f64;
            let (sx, sy) = graph.rotation(v).iter().fold((0.0, 0.0), |(sx, sy), &w| (sx + pos[w].0, sy + pos[w].1));
            pos[v] = (sx / d, sy / d);
        }
    }
    pos
}

fn draw_instance(out: &mut String, inst: &Instance, ox: f64, oy: f64) {
    let g = &inst.graph;
    let pos = layout(g);
    let at = |v: usize| {
        let (x, y) = pos[v];
        (ox + MARGIN + x * (PANEL - 2.0 * MARGIN), oy + PANEL - MARGIN - y * (PANEL - 2.0 * MARGIN))
    };
    let mut multiplicity = vec![0usize; g.edge_count()];
    for e in inst.step_edges() {
        multiplicity[e] += 1;
    }
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let ((x1, y1), (x2, y2)) = (at(a), at(b));
        let class = if multiplicity[e] > 0 { "walk" } else { "edge" };
        let _ = writeln!(
            out,
            r#"<line class="{class}" data-edge="{}" data-multiplicity="{}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"#,
            escape(&g.edge_name(e)),
            multiplicity[e]
        );
        if multiplicity[e] > 1 {
            let _ = writeln!(
                out,
                r#"<text class="label multiplicity" x="{:.2}" y="{:.2}">×{}</text>"#,
                (x1 + x2) / 2.0 + 4.0,
                (y1 + y2) / 2.0 - 4.0,
                multiplicity[e]
            );
        }
    }
    for v in 0..g.vertex_count() {
        let (x, y) = at(v);
        let name = escape(g.name(v));
        let _ = writeln!(out, r#"<circle class="vertex" data-vertex="{name}" cx="{x:.2}" cy="{y:.2}" r="3.5"/>"#);
        let _ = writeln!(out, r#"<text class="label" x="{:.2}" y="{:.2}">{name}</text>"#, x + 5.0, y - 5.0);
    }
}

/// The graph with the walk's image highlighted.
pub fn render_drawing(inst: &Instance) -> String {
    let mut out = String::new();
    svg_open(&mut out, PANEL, PANEL + 20.0, "drawing");
    draw_instance(&mut out, inst, 0.0, 0.0);
    let _ = writeln!(
        out,
        r#"<text class="note" x="8" y="{:.0}">{} walk: {}</text>"#,
        PANEL + 12.0,
        if inst.walk.is_closed() { "closed" } else { "open" },
        escape(&inst.walk.names(&inst.graph).join(" "))
    );
    out.push_str("</svg>\n");
    out
}

fn note_text(note: &LevelNote) -> String {
    match note {
        LevelNote::Empty => "empty".into(),
        LevelNote::Injective => "injective".into(),
        LevelNote::Transversal { witness } => {
            format!("transversal at positions {} and {}", witness.positions.0, witness.positions.1)
        }
        LevelNote::Winding { info } => format!("winding of degree {}", info.degree),
        LevelNote::Derived => "derived".into(),
    }
}

/// The derivative tower, one panel per level, up to the level that decides. A
/// winding is followed by its derivative, the same winding again.
pub fn render_tower(inst: &Instance) -> String {
    let (mut levels, mut notes) = match decide_approximable(inst) {
        Ok(d) => (d.trace.levels, d.trace.notes),
        Err(_) => (vec![inst.clone()], vec![LevelNote::Derived]),
    };
    if let (Some(LevelNote::Winding { .. }), Some(last)) = (notes.last(), levels.last()) {
        if let Ok(next) = derive(last) {
            if let Some(info) = detect_winding(&next) {
                levels.push(next);
                notes.push(LevelNote::Winding { info });
            }
        }
    }
    let mut out = String::new();
    svg_open(&mut out, PANEL * levels.len().max(1) as f64, PANEL + 40.0, "tower");
    for (i, (level, note)) in levels.iter().zip(&notes).enumerate() {
        let ox = PANEL * i as f64;
        let _ = writeln!(out, r#"<g class="level" data-level="{i}">"#);
        draw_instance(&mut out, level, ox, 0.0);
        let _ = writeln!(
            out,
            r#"<text class="note" x="{:.0}" y="{:.0}">level {i}: {}</text>"#,
            ox + 8.0,
            PANEL + 14.0,
            escape(&note_text(note))
        );
        let _ = writeln!(
            out,
            r#"<text class="note" x="{:.0}" y="{:.0}">{}</text>"#,
            ox + 8.0,
            PANEL + 30.0,
            escape(&level.walk.names(&level.graph).join(" "))
        );
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

/// The painted deleted product as a grid: first factor's steps left to right,
/// second factor's bottom to top. Black cells filled, other cells shaded by
/// component, black one-cells as thick segments, odd parities labelled `1`.
pub fn render_table(table: &ObstructionTable, first_steps: usize, second_steps: usize, black_one_cells: &[OneCellSegment]) -> String {
    let unit = 36.0;
    let (w, h) = (first_steps as f64 * unit + 2.0 * MARGIN, second_steps as f64 * unit + 2.0 * MARGIN + 20.0);
    let mut out = String::new();
    svg_open(&mut out, w, h, "table");
    let x = |i: f64| MARGIN + i * unit;
    let y = |j: f64| MARGIN + (second_steps as f64 - j) * unit;
    for row in &table.cells {
        let [a, b] = row.cell;
        let contributes = table.components[row.component].contributes;
        let (class, fill) = if row.black {
            ("cell black".to_string(), "#333")
        } else {
            (format!("cell comp-{}", row.component), PALETTE[row.component % PALETTE.len()])
        };
        let _ = writeln!(
            out,
            r#"<rect class="{class}" data-cell="{a},{b}" data-component="{}" data-contributes="{contributes}" x="{:.1}" y="{:.1}" width="{unit:.1}" height="{unit:.1}" fill="{fill}"/>"#,
            row.component,
            x(a as f64 - 1.0),
            y(b as f64)
        );
        if row.parity == 1 {
            let _ = writeln!(
                out,
                r#"<text class="parity" data-cell="{a},{b}" x="{:.1}" y="{:.1}" fill="{}">1</text>"#,
                x(a as f64 - 0.5),
                y(b as f64 - 0.5) + 4.0,
                if row.black { "#fff" } else { "#000" }
            );
        }
    }
    for seg in black_one_cells {
        let ((x1, y1), (x2, y2)) = match *seg {
            OneCellSegment::Vertical { position, step } => ((x(position as f64), y(step as f64 - 1.0)), (x(position as f64), y(step as f64))),
            OneCellSegment::Horizontal { position, step } => ((x(step as f64 - 1.0), y(position as f64)), (x(step as f64), y(position as f64))),
        };
        let _ = writeln!(out, r#"<line class="black-edge" x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}"/>"#);
    }
    for i in 1..=first_steps {
        let _ = writeln!(out, r#"<text class="label" x="{:.1}" y="{:.1}">{i}</text>"#, x(i as f64 - 0.6), y(0.0) + 14.0);
    }
    for j in 1..=second_steps {
        let _ = writeln!(out, r#"<text class="label" x="{:.1}" y="{:.1}">{j}</text>"#, x(0.0) - 16.0, y(j as f64 - 0.5) + 4.0);
    }
    let vector: Vec<String> = table.vector.iter().map(|b| b.to_string()).collect();
    let _ = writeln!(out, r#"<text class="note" x="8" y="{:.0}">v = ({})</text>"#, h - 6.0, vector.join(", "));
    out.push_str("</svg>\n");
    out
}

/// A one-cell drawn on the grid: at domain position `position` (a grid line)
/// across step `step` of the other factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OneCellSegment {
    /// Position on the horizontal (first) factor.
    Vertical { position: usize, step: usize },
    /// Position on the vertical (second) factor.
    Horizontal { position: usize, step: usize },
}

/// Table of a single walk's obstruction; cell `(i, j)` with `i < j` is drawn at
/// column `i`, row `j`.
pub fn render_obstruction(inst: &Instance) -> String {
    let ob = obstruction(inst);
    let table = ObstructionTable::of(&ob);
    let m = inst.step_count();
    let segments = one_cell_segments(&ob.painted, m);
    render_table(&table, m, m, &segments)
}

/// Table of a pair's disjoinability obstruction.
pub fn render_pair_obstruction(ob: &Obstruction, k_steps: usize, l_steps: usize) -> String {
    let table = ObstructionTable::of(ob);
    let segments = one_cell_segments(&ob.painted, k_steps.max(l_steps));
    render_table(&table, k_steps, l_steps, &segments)
}

fn one_cell_segments(painted: &PaintedComplex, m: usize) -> Vec<OneCellSegment> {
    let mut out = Vec::new();
    for oc in &painted.black_one_cells {
        for cell in painted.complex.cofaces(*oc) {
            // `s` is the step through the one-cell's vertex
            let (s, column) = match oc.side {
                Side::First if painted.complex.is_symmetric() => {
                    let s = if cell.a == oc.step { cell.b } else { cell.a };
                    (s, s < oc.step)
                }
                Side::First => (cell.a, true),
                Side::Second => (cell.b, false),
            };
            let position = if oc.position == 0 && s == m { m } else { oc.position };
            let seg = if column {
                OneCellSegment::Vertical { position, step: oc.step }
            } else {
                OneCellSegment::Horizontal { position, step: oc.step }
            };
            if !out.contains(&seg) {
                out.push(seg);
            }
        }
    }
    out
}
