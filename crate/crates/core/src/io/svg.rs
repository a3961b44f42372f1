//! Deterministic SVG drawings of planar fans and of cross-sections of fans
//! in dimension three.
//!
//! Planar fans are drawn as sectors around the origin. In dimension three a
//! cone is drawn as its trace on the plane `x + y + z = 1`, in barycentric
//! coordinates on the triangle spanned by the unit vectors. Rays with
//! non-positive coordinate sum do not meet that plane; cones containing them
//! are left out and counted in a comment.

use std::fmt::Write;

use crate::fan::Fan;
use crate::linalg::LatticeVector;
use crate::{Error, Result};

const SIZE: f64 = 480.0;
const RADIUS: f64 = 200.0;
const PALETTE: [&str; 6] = ["#d9e6f2", "#f2e0d9", "#dff2d9", "#f2efd9", "#e6d9f2", "#d9f2ef"];

fn label(v: &LatticeVector) -> String {
    match v.standard_index() {
        Some(j) => format!("e{}", subscript(j + 1)),
        None => v.to_string(),
    }
}

fn subscript(k: usize) -> String {
    k.to_string().chars().map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap_or(0)).unwrap_or(c)).collect()
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, "<title>{title}</title>");
    let _ = writeln!(out, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
}

fn polygon(out: &mut String, points: &[(f64, f64)], fill: &str) {
    let pts: Vec<String> = points.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
    let _ = writeln!(out, r#"<polygon points="{}" fill="{fill}" stroke="black" stroke-width="1"/>"#, pts.join(" "));
}

fn text(out: &mut String, (x, y): (f64, f64), s: &str) {
    let _ = writeln!(out, r#"<text x="{x:.2}" y="{y:.2}" font-family="sans-serif" font-size="11" text-anchor="middle">{s}</text>"#);
}

pub fn render_svg(f: &Fan) -> Result<String> {
    match f.dim() {
        2 => Ok(planar(f)),
        3 => Ok(cross_section(f)),
        n => Err(Error::Unsupported(format!("SVG output is available in dimensions 2 and 3, not {n}"))),
    }
}

fn angle(v: &LatticeVector) -> f64 {
    let p = v.to_f64();
    p[1].atan2(p[0])
}

fn planar(f: &Fan) -> String {
    let c = SIZE / 2.0;
    let at = |theta: f64, r: f64| (c + r * theta.cos(), c - r * theta.sin());
    let mut out = String::new();
    header(&mut out, "fan");
    for (i, cone) in f.max_cones().enumerate() {
        let fill = PALETTE[i % PALETTE.len()];
        let g = cone.generators();
        if g.len() < 2 {
            continue;
        }
        let (a, b) = (angle(&g[0]), angle(&g[1]));
        // Sweep from a to b the short way round; cones are strictly convex.
        let mut sweep = b - a;
        if sweep > std::f64::consts::PI {
            sweep -= 2.0 * std::f64::consts::PI;
        } else if sweep < -std::f64::consts::PI {
            sweep += 2.0 * std::f64::consts::PI;
        }
        let steps = 16;
        let mut pts = vec![(c, c)];
        pts.extend((0..=steps).map(|k| at(a + sweep * k as f64 / steps as f64, RADIUS)));
        polygon(&mut out, &pts, fill);
    }
    for r in f.rays() {
        let theta = angle(&r);
        let (x, y) = at(theta, RADIUS);
        let _ = writeln!(out, r#"<line x1="{c:.2}" y1="{c:.2}" x2="{x:.2}" y2="{y:.2}" stroke="black" stroke-width="1.5"/>"#);
        text(&mut out, at(theta, RADIUS + 18.0), &label(&r));
    }
    out.push_str("</svg>\n");
    out
}

fn chart(v: &LatticeVector) -> Option<(f64, f64)> {
    let p = v.to_f64();
    let s: f64 = p.iter().sum();
    if s <= 0.0 {
        return None;
    }
    let (a, b, c) = (p[0] / s, p[1] / s, p[2] / s);
    let corners = [(40.0, 420.0), (440.0, 420.0), (240.0, 420.0 - 400.0 * 3f64.sqrt() / 2.0)];
    Some((
        a * corners[0].0 + b * corners[1].0 + c * corners[2].0,
        a * corners[0].1 + b * corners[1].1 + c * corners[2].1,
    ))
}

fn cross_section(f: &Fan) -> String {
    let mut out = String::new();
    header(&mut out, "fan cross-section");
    let mut skipped = 0;
    for (i, cone) in f.max_cones().enumerate() {
        let pts: Option<Vec<(f64, f64)>> = cone.generators().iter().map(chart).collect();
        match pts {
            Some(pts) if pts.len() >= 2 => polygon(&mut out, &pts, PALETTE[i % PALETTE.len()]),
            _ => skipped += 1,
        }
    }
    for r in f.rays() {
        if let Some((x, y)) = chart(&r) {
            let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="2.5" fill="black"/>"#);
            text(&mut out, (x, y - 6.0), &label(&r));
        }
    }
    if skipped > 0 {
        let _ = writeln!(out, "<!-- {skipped} cones do not meet the plane x + y + z = 1 -->");
    }
    out.push_str("</svg>\n");
    out
}
