//! SVG overlay of a mesh, a highlighted region and its contour.
//!
//! Coordinates are emitted as given (image convention, y down).

use std::fmt::Write;

use crate::error::Result;
use crate::io::format_fixed6;
use crate::mesh::{SimplexSet, TriMesh};
use crate::shape::Edgelet;

const MARGIN: f64 = 1.0;

fn f(v: f64) -> String {
    format_fixed6(v)
}

pub fn overlay(mesh: &TriMesh, support: &SimplexSet, edgelet: Option<&Edgelet>) -> Result<String> {
    mesh.check_set(support)?;
    let v = mesh.vertices();
    let (mut x0, mut y0, mut x1, mut y1) = (0.0_f64, 0.0_f64, 1.0_f64, 1.0_f64);
    if let Some(p) = v.first() {
        (x0, y0, x1, y1) = (p.x, p.y, p.x, p.y);
    }
    for p in v {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    let (w, h) = (x1 - x0 + 2.0 * MARGIN, y1 - y0 + 2.0 * MARGIN);
    let stroke = (w.max(h) / 400.0).max(0.01);

    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        f(x0 - MARGIN),
        f(y0 - MARGIN),
        f(w),
        f(h)
    )
    .unwrap();

    writeln!(s, r##"<g fill="#f4a261" fill-opacity="0.55" stroke="none">"##).unwrap();
    for t in support.iter() {
        let [a, b, c] = mesh.corners(t)?;
        writeln!(
            s,
            r#"<polygon points="{},{} {},{} {},{}"/>"#,
            f(a.x),
            f(a.y),
            f(b.x),
            f(b.y),
            f(c.x),
            f(c.y)
        )
        .unwrap();
    }
    writeln!(s, "</g>").unwrap();

    writeln!(s, r##"<g stroke="#808080" stroke-width="{}">"##, f(stroke)).unwrap();
    for e in mesh.edge_adjacency().keys() {
        let (p, q) = (v[e.0], v[e.1]);
        writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            f(p.x),
            f(p.y),
            f(q.x),
            f(q.y)
        )
        .unwrap();
    }
    writeln!(s, "</g>").unwrap();

    if let Some(e) = edgelet {
        writeln!(
            s,
            r##"<g fill="none" stroke="#d62828" stroke-width="{}" stroke-linejoin="round">"##,
            f(3.0 * stroke)
        )
        .unwrap();
        for l in &e.loops {
            let pts: Vec<String> = l.iter().map(|&i| format!("{},{}", f(v[i].x), f(v[i].y))).collect();
            writeln!(s, r#"<polygon points="{}"/>"#, pts.join(" ")).unwrap();
        }
        writeln!(s, "</g>").unwrap();
    }
    writeln!(s, "</svg>").unwrap();
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::fixtures::unit_square;
    use crate::shape::boundary_loops;

    #[test]
    fn overlay_has_all_parts() {
        let sq = unit_square();
        let support = sq.all_triangles();
        let e = boundary_loops(&sq, &support).unwrap();
        let svg = overlay(&sq, &support, Some(&e)).unwrap();
        assert!(svg.starts_with("<?xml"));
        assert_eq!(svg.matches("<line ").count(), 5);
        assert_eq!(svg.matches("<polygon ").count(), 3);
        assert!(svg.contains(r#"viewBox="-1.000000 -1.000000 3.000000 3.000000""#));
        assert_eq!(svg, overlay(&sq, &support, Some(&e)).unwrap());
    }
}
