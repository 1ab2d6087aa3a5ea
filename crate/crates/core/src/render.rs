//! SVG rendering of a finished drawing: primal vertices and edges in blue,
//! dual in red, the bent edge as a two-segment polyline, y growing upward.
//! Output is deterministic for golden-file comparison.

use crate::placement::Drawing;
use crate::quad::{NodeKind, QuadGraph};
use std::fmt::Write as _;

#[derive(Debug, Clone)]
pub struct RenderStyle {
    pub primal_color: String,
    pub dual_color: String,
    /// Pixels per grid unit, at least 1.
    pub scale: u32,
    pub show_grid: bool,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            primal_color: "#1f77b4".to_owned(),
            dual_color: "#d62728".to_owned(),
            scale: 20,
            show_grid: false,
        }
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(ch),
        }
    }
    out
}

pub fn render_svg(q: &QuadGraph, d: &Drawing, style: &RenderStyle) -> String {
    let scale = style.scale.max(1) as i64;
    let g2 = q.radial();
    let max_x = d
        .coords
        .iter()
        .map(|c| c.0)
        .chain([d.bend_point.0])
        .max()
        .unwrap_or(0);
    let max_y = d
        .coords
        .iter()
        .map(|c| c.1)
        .chain([d.bend_point.1])
        .max()
        .unwrap_or(0);
    let px = |x: i64| (x + 1) * scale;
    let py = |y: i64| (max_y + 1 - y) * scale;
    let width = (max_x + 2) * scale;
    let height = (max_y + 2) * scale;
    let stroke = (scale / 10).max(1);
    let radius = (scale * 18 / 100).max(2);
    let font = (scale * 45 / 100).max(6);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(
        svg,
        "<rect x=\"0\" y=\"0\" width=\"{width}\" height=\"{height}\" fill=\"white\"/>"
    );
    if style.show_grid {
        let _ = writeln!(svg, "<g stroke=\"#dddddd\" stroke-width=\"1\">");
        for x in 0..=max_x + 1 {
            let _ = writeln!(
                svg,
                "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\"/>",
                px(x),
                py(max_y + 1),
                py(-1)
            );
        }
        for y in 0..=max_y + 1 {
            let _ = writeln!(
                svg,
                "<line x1=\"{1}\" y1=\"{0}\" x2=\"{2}\" y2=\"{0}\"/>",
                py(y),
                px(-1),
                px(max_x + 1)
            );
        }
        let _ = writeln!(svg, "</g>");
    }

    // Dual edges first so primal edges read on top; within a class,
    // edges follow the primal edge order.
    let bent = q.bent_pair();
    let mut classes: [(String, Vec<(u32, u32)>); 2] = [
        (style.dual_color.clone(), Vec::new()),
        (style.primal_color.clone(), Vec::new()),
    ];
    for (x, y) in q.primal().edges() {
        classes[1].1.push((q.of_primal(x), q.of_primal(y)));
        let (fl, fr) = q
            .dual_counterpart(x, y)
            .expect("every edge borders two faces");
        classes[0].1.push((fl, fr));
    }
    for (color, edges) in &classes {
        let _ = writeln!(
            svg,
            "<g stroke=\"{color}\" stroke-width=\"{stroke}\" fill=\"none\" stroke-linecap=\"round\">"
        );
        for &(a, b) in edges {
            let (xa, ya) = d.coords[a as usize];
            let (xb, yb) = d.coords[b as usize];
            if (a, b) == bent || (b, a) == bent {
                let _ = writeln!(
                    svg,
                    "<polyline points=\"{},{} {},{} {},{}\"/>",
                    px(xa),
                    py(ya),
                    px(d.bend_point.0),
                    py(d.bend_point.1),
                    px(xb),
                    py(yb)
                );
            } else {
                let _ = writeln!(
                    svg,
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                    px(xa),
                    py(ya),
                    px(xb),
                    py(yb)
                );
            }
        }
        let _ = writeln!(svg, "</g>");
    }

    for (v, &(x, y)) in d.coords.iter().enumerate() {
        let color = match q.kind(v as u32) {
            NodeKind::Primal(_) => &style.primal_color,
            NodeKind::Dual(_) => &style.dual_color,
        };
        let name = escape(g2.name(v as u32));
        let _ = writeln!(
            svg,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{radius}\" fill=\"{color}\"><title>{name}</title></circle>",
            px(x),
            py(y)
        );
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"{font}\" fill=\"{color}\">{name}</text>",
            px(x) + radius + 2,
            py(y) - radius
        );
    }

    let _ = writeln!(svg, "</svg>");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::platonic;
    use crate::labeling::find_labeling;
    use crate::placement::{place, Engine};
    use crate::quad::BendTarget;

    fn rendered(name: &str, style: &RenderStyle) -> (QuadGraph, String) {
        let q = QuadGraph::build(platonic(name).unwrap(), BendTarget::Primal).unwrap();
        let lab = find_labeling(&q).unwrap();
        let d = place(&q, &lab, Engine::Offset);
        let svg = render_svg(&q, &d, style);
        (q, svg)
    }

    #[test]
    fn cube_svg_has_the_expected_elements() {
        let (q, svg) = rendered("cube", &RenderStyle::default());
        let e = q.primal().edge_count();
        let count = |needle: &str| svg.matches(needle).count();
        // Each class draws one polyline-or-line per edge; exactly one edge
        // overall is the bent polyline.
        assert_eq!(count("<polyline"), 1);
        assert_eq!(count("<line"), 2 * e - 1);
        assert_eq!(count("<circle"), q.n());
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("#1f77b4") && svg.contains("#d62728"));
    }

    #[test]
    fn rendering_is_deterministic_and_grid_optional() {
        let style = RenderStyle {
            show_grid: true,
            scale: 12,
            ..RenderStyle::default()
        };
        let (_, one) = rendered("tetrahedron", &style);
        let (_, two) = rendered("tetrahedron", &style);
        assert_eq!(one, two);
        let plain = rendered("tetrahedron", &RenderStyle::default()).1;
        assert!(one.contains("#dddddd") && !plain.contains("#dddddd"));
        assert!(one.len() > plain.len());
    }

    #[test]
    fn y_axis_is_flipped_so_higher_points_render_higher() {
        let q = QuadGraph::build(platonic("tetrahedron").unwrap(), BendTarget::Primal).unwrap();
        let lab = find_labeling(&q).unwrap();
        let d = place(&q, &lab, Engine::Offset);
        let style = RenderStyle::default();
        let svg = render_svg(&q, &d, &style);
        // The top corner (largest drawing y) must appear with the smallest
        // pixel y among vertex glyphs.
        let top = d.coords.iter().enumerate().max_by_key(|(_, c)| c.1).unwrap().0;
        let (tx, ty) = d.coords[top];
        let scale = style.scale as i64;
        let max_y = d.coords.iter().map(|c| c.1).chain([d.bend_point.1]).max().unwrap();
        let needle = format!("<circle cx=\"{}\" cy=\"{}\"", (tx + 1) * scale, (max_y + 1 - ty) * scale);
        assert!(svg.contains(&needle));
    }
}
