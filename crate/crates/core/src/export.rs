//! Best-effort graph exports: DOT for the bipartite incidence graph and a
//! schematic SVG with the vertex classes on two concentric rings.

use std::fmt::Write;

use crate::dessin::Dessin;

const PALETTE: [&str; 12] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
];

/// DOT rendering of the bipartite graph; with `color_cells` every edge is
/// tinted by the cell of its white dart.
pub fn to_dot(dessin: &Dessin, color_cells: bool) -> String {
    let l = dessin.l();
    let q = dessin.q();
    let mut out = String::new();
    out.push_str("graph dessin {\n");
    out.push_str("  layout=circo;\n  node [fontsize=9];\n");
    for w in 0..l {
        let _ = writeln!(
            out,
            "  w{w} [shape=circle, style=filled, fillcolor=white, label=\"{w}\"];"
        );
    }
    for b in 0..l {
        let _ = writeln!(
            out,
            "  b{b} [shape=circle, style=filled, fillcolor=black, fontcolor=white, label=\"{b}\"];"
        );
    }
    for w in 0..l {
        for i in 0..q {
            let b = (w + dessin.element_at(i)) % l;
            if color_cells {
                let cell = dessin.cell_of_dart(dessin.white_dart(w, i));
                let color = PALETTE[cell % PALETTE.len()];
                let _ = writeln!(out, "  w{w} -- b{b} [color=\"{color}\"];");
            } else {
                let _ = writeln!(out, "  w{w} -- b{b};");
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Schematic SVG: white vertices on the outer ring, black on the inner one,
/// edges as chords tinted by cell.
pub fn to_svg(dessin: &Dessin) -> String {
    let l = dessin.l();
    let q = dessin.q();
    let size = 900.0;
    let center = size / 2.0;
    let r_white = size * 0.42;
    let r_black = size * 0.30;
    let tau = std::f64::consts::TAU;

    let white_xy = |w: u64| {
        let a = tau * w as f64 / l as f64 - tau / 4.0;
        (center + r_white * a.cos(), center + r_white * a.sin())
    };
    let black_xy = |b: u64| {
        let a = tau * (b as f64 + 0.5) / l as f64 - tau / 4.0;
        (center + r_black * a.cos(), center + r_black * a.sin())
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    );
    let _ = writeln!(
        out,
        "  <rect width=\"{size}\" height=\"{size}\" fill=\"white\"/>"
    );
    for w in 0..l {
        let (x1, y1) = white_xy(w);
        for i in 0..q {
            let b = (w + dessin.element_at(i)) % l;
            let (x2, y2) = black_xy(b);
            let cell = dessin.cell_of_dart(dessin.white_dart(w, i));
            let color = PALETTE[cell % PALETTE.len()];
            let _ = writeln!(
                out,
                "  <line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"{color}\" stroke-width=\"0.8\"/>"
            );
        }
    }
    let vr = (280.0 / l as f64).clamp(2.5, 9.0);
    for w in 0..l {
        let (x, y) = white_xy(w);
        let _ = writeln!(
            out,
            "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{vr:.1}\" fill=\"white\" stroke=\"black\"/>"
        );
        if l <= 64 {
            let _ = writeln!(
                out,
                "  <text x=\"{x:.2}\" y=\"{:.2}\" font-size=\"8\" text-anchor=\"middle\">{w}</text>",
                y - vr - 2.0
            );
        }
    }
    for b in 0..l {
        let (x, y) = black_xy(b);
        let _ = writeln!(
            out,
            "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{vr:.1}\" fill=\"black\"/>"
        );
        if l <= 64 {
            let _ = writeln!(
                out,
                "  <text x=\"{x:.2}\" y=\"{:.2}\" font-size=\"8\" text-anchor=\"middle\" fill=\"#555\">{b}</text>",
                y + vr + 8.0
            );
        }
    }
    let _ = writeln!(
        out,
        "  <text x=\"10\" y=\"20\" font-size=\"12\">l = {l}, q = {q}, cells = {}, genus = {}</text>",
        dessin.cells().len(),
        dessin.genus()
    );
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dessin::build_dessin;
    use crate::ordering::OrderedDifferenceSet;

    fn fano() -> Dessin {
        let o = OrderedDifferenceSet::from_order(vec![1, 2, 4], 7).unwrap();
        build_dessin(&o).unwrap()
    }

    #[test]
    fn dot_lists_every_edge() {
        let d = fano();
        let dot = to_dot(&d, false);
        assert_eq!(dot.matches(" -- ").count() as u64, d.edge_count());
        assert!(dot.starts_with("graph dessin {"));
        let colored = to_dot(&d, true);
        assert!(colored.contains(PALETTE[0]));
    }

    #[test]
    fn svg_is_well_formed_enough() {
        let d = fano();
        let svg = to_svg(&d);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<line").count() as u64, d.edge_count());
        // 2l vertex dots
        assert_eq!(svg.matches("<circle").count() as u64, d.vertex_count());
    }

    #[test]
    fn exports_are_deterministic() {
        let d1 = fano();
        let d2 = fano();
        assert_eq!(to_dot(&d1, true), to_dot(&d2, true));
        assert_eq!(to_svg(&d1), to_svg(&d2));
    }

    #[test]
    fn cell_of_dart_usage_in_svg_matches_color_in_dot() {
        let d = fano();
        let dot = to_dot(&d, true);
        let svg = to_svg(&d);
        for color in [PALETTE[0], PALETTE[1], PALETTE[2]] {
            assert_eq!(dot.contains(color), svg.contains(color));
        }
    }
}
