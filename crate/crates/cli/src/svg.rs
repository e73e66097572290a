//! Deterministic SVG rendering of relations and product sets. Floating
//! point appears here only to position shapes on the canvas; all numbers
//! are printed with four decimals so repeated runs produce identical
//! bytes.

use mahavier_core::rat::to_f64;
use mahavier_core::{fm_project, Cell, GSet, Piece, Rat, Relation};

const SIDE: f64 = 1000.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#e377c2",
];

fn fmt(v: f64) -> String {
    let rounded = (v * 10_000.0).round() / 10_000.0;
    // Avoid the "-0.0000" artifact so output bytes depend only on values.
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    format!("{rounded:.4}")
}

fn sx(x: &Rat) -> String {
    fmt(to_f64(x) * SIDE)
}

fn sy(y: &Rat) -> String {
    fmt(SIDE - to_f64(y) * SIDE)
}

fn frame(out: &mut String, dx: f64, dy: f64) {
    out.push_str(&format!(
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"white\" stroke=\"#333333\" stroke-width=\"2\"/>\n",
        fmt(dx),
        fmt(dy),
        fmt(SIDE),
        fmt(SIDE)
    ));
}

fn piece_markup(piece: &Piece, color: &str) -> String {
    match piece {
        Piece::Rect { x, y } => {
            if x.is_point() && y.is_point() {
                format!(
                    "<circle cx=\"{}\" cy=\"{}\" r=\"6\" fill=\"{color}\"/>\n",
                    sx(x.lo()),
                    sy(y.lo())
                )
            } else if x.is_point() || y.is_point() {
                format!(
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"5\" stroke-linecap=\"round\"/>\n",
                    sx(x.lo()),
                    sy(y.lo()),
                    sx(x.hi()),
                    sy(y.hi())
                )
            } else {
                let width = (to_f64(x.hi()) - to_f64(x.lo())) * SIDE;
                let height = (to_f64(y.hi()) - to_f64(y.lo())) * SIDE;
                format!(
                    "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{color}\" fill-opacity=\"0.45\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
                    sx(x.lo()),
                    sy(y.hi()),
                    fmt(width),
                    fmt(height)
                )
            }
        }
        Piece::Segment { from, to } => format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"5\" stroke-linecap=\"round\"/>\n",
            sx(&from.0),
            sy(&from.1),
            sx(&to.0),
            sy(&to.1)
        ),
    }
}

/// The graph of a relation on a single 1000x1000 panel.
pub fn render_relation(r: &Relation) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-40 -80 1080 1160\">\n<title>{}</title>\n",
        r.name()
    ));
    out.push_str(&format!(
        "<text x=\"0\" y=\"-30\" font-family=\"monospace\" font-size=\"36\" fill=\"#333333\">{}</text>\n",
        r.name()
    ));
    frame(&mut out, 0.0, 0.0);
    for (idx, piece) in r.pieces().iter().enumerate() {
        out.push_str(&piece_markup(piece, PALETTE[idx % PALETTE.len()]));
    }
    out.push_str("</svg>\n");
    out
}

/// Support points of a two-dimensional cell in eight fixed directions;
/// the exact optimizers are deduplicated and traced as a polygon.
fn support_polygon(cell: &Cell) -> Vec<(Rat, Rat)> {
    use mahavier_core::rat_int;
    let zero = || rat_int(0);
    let one = || rat_int(1);
    let neg = || rat_int(-1);
    let directions = [
        vec![one(), zero()],
        vec![one(), one()],
        vec![zero(), one()],
        vec![neg(), one()],
        vec![neg(), zero()],
        vec![neg(), neg()],
        vec![zero(), neg()],
        vec![one(), neg()],
    ];
    let mut points = Vec::new();
    for dir in &directions {
        if let Some((_, p)) = cell.maximize(dir) {
            let candidate = (p[0].clone(), p[1].clone());
            if !points.contains(&candidate) {
                points.push(candidate);
            }
        }
    }
    points
}

fn cell_markup(out: &mut String, cell: &Cell, color: &str, dx: f64, dy: f64) {
    let place = |p: &(Rat, Rat)| {
        (
            fmt(to_f64(&p.0) * SIDE + dx),
            fmt(SIDE - to_f64(&p.1) * SIDE + dy),
        )
    };
    let points = support_polygon(cell);
    match points.len() {
        0 => {}
        1 => {
            let (cx, cy) = place(&points[0]);
            out.push_str(&format!(
                "<circle cx=\"{cx}\" cy=\"{cy}\" r=\"7\" fill=\"{color}\"/>\n"
            ));
        }
        2 => {
            let (x1, y1) = place(&points[0]);
            let (x2, y2) = place(&points[1]);
            out.push_str(&format!(
                "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"{color}\" stroke-width=\"5\" stroke-linecap=\"round\"/>\n"
            ));
        }
        _ => {
            let path: Vec<String> = points
                .iter()
                .map(|p| {
                    let (x, y) = place(p);
                    format!("{x},{y}")
                })
                .collect();
            out.push_str(&format!(
                "<polygon points=\"{}\" fill=\"{color}\" fill-opacity=\"0.45\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
                path.join(" ")
            ));
        }
    }
}

/// A product set as one panel per coordinate pair (a single panel in
/// dimension two), each showing the exact projection of every cell.
pub fn render_gset(g: &GSet) -> String {
    let dim = g.dim();
    let mut pairs = Vec::new();
    for a in 0..dim {
        for b in a + 1..dim {
            pairs.push((a, b));
        }
    }
    let per_row = pairs.len().min(3);
    let rows = pairs.len().div_ceil(per_row);
    let width = per_row as f64 * (SIDE + 60.0) - 60.0;
    let height = rows as f64 * (SIDE + 110.0) - 50.0;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-40 -80 {} {}\">\n",
        fmt(width + 80.0),
        fmt(height + 120.0)
    ));
    for (panel, &(a, b)) in pairs.iter().enumerate() {
        let dx = (panel % per_row) as f64 * (SIDE + 60.0);
        let dy = (panel / per_row) as f64 * (SIDE + 110.0);
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"36\" fill=\"#333333\">{} vs {}</text>\n",
            fmt(dx),
            fmt(dy - 30.0),
            g.labels()[a],
            g.labels()[b]
        ));
        frame(&mut out, dx, dy);
        for (idx, cell) in g.cells().iter().enumerate() {
            let flat = if dim == 2 {
                cell.clone()
            } else {
                fm_project(cell, &[a, b]).expect("coordinate pairs are valid")
            };
            cell_markup(&mut out, &flat, PALETTE[idx % PALETTE.len()], dx, dy);
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use mahavier_core::{build_gset, make_example, ChainSystem, Semantics};

    #[test]
    fn rendering_is_byte_deterministic() {
        let mirror = make_example("mirror").unwrap();
        assert_eq!(render_relation(&mirror), render_relation(&mirror));
        let k3 = build_gset(
            &ChainSystem::uniform(mirror, 3).unwrap(),
            Semantics::Consecutive,
        );
        assert_eq!(render_gset(&k3), render_gset(&k3));
    }

    #[test]
    fn relation_markup_uses_the_right_shapes() {
        let svg = render_relation(&make_example("wall-and-diagonal").unwrap());
        assert!(svg.contains("<line"), "wall and diagonal are lines");
        let svg = render_relation(&make_example("id-or-B").unwrap());
        assert!(svg.contains("<rect") && svg.contains("<line"));
        let svg = render_relation(&make_example("patched-diagonal").unwrap());
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn gset_panels_cover_all_coordinate_pairs() {
        let f = make_example("mirror").unwrap();
        let k4 = build_gset(
            &ChainSystem::uniform(f, 4).unwrap(),
            Semantics::Consecutive,
        );
        let svg = render_gset(&k4);
        assert_eq!(svg.matches("vs").count(), 6, "four coordinates, six panels");
        assert_eq!(svg.matches("<svg").count(), 1);
    }
}
