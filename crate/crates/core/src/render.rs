//! SVG drawing of real arrangements in the affine chart `z = 1`.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::geometry::Arrangement;
use crate::lattice::compute_lattice;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewport {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Viewport {
    pub fn contains(&self, x: f64, y: f64) -> bool {
        (self.xmin..=self.xmax).contains(&x) && (self.ymin..=self.ymax).contains(&y)
    }
}

const SIZE: f64 = 600.0;

/// A marker for a lattice point inside the viewport.
#[derive(Clone, Debug, PartialEq)]
pub struct Marker {
    pub x: f64,
    pub y: f64,
    pub mu: usize,
    /// Index into the lattice's point list.
    pub point: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scene {
    pub viewport: Viewport,
    /// `(line index, endpoints)` for each affine line meeting the viewport.
    pub segments: Vec<(usize, [(f64, f64); 2])>,
    pub markers: Vec<Marker>,
    pub infinity: Option<usize>,
}

fn to_f64(a: &Arrangement, s: &crate::scalar::Scalar) -> Result<f64> {
    s.to_f64()
        .ok_or_else(|| Error::NotDrawable(format!("scalar {s} has no real value in {}", a.ctx())))
}

/// Clips the line `a·x + b·y + c = 0` to the viewport.
fn clip(v: &Viewport, a: f64, b: f64, c: f64) -> Option<[(f64, f64); 2]> {
    let mut pts: Vec<(f64, f64)> = Vec::new();
    if b != 0.0 {
        for x in [v.xmin, v.xmax] {
            let y = -(a * x + c) / b;
            if (v.ymin..=v.ymax).contains(&y) {
                pts.push((x, y));
            }
        }
    }
    if a != 0.0 {
        for y in [v.ymin, v.ymax] {
            let x = -(b * y + c) / a;
            if (v.xmin..=v.xmax).contains(&x) {
                pts.push((x, y));
            }
        }
    }
    pts.sort_by(|p, q| p.partial_cmp(q).unwrap());
    pts.dedup_by(|p, q| (p.0 - q.0).abs() < 1e-12 && (p.1 - q.1).abs() < 1e-12);
    match pts.as_slice() {
        [p, .., q] => Some([*p, *q]),
        _ => None,
    }
}

/// Square viewport around the affine lattice points with a margin.
pub fn auto_viewport(a: &Arrangement) -> Result<Viewport> {
    let lat = compute_lattice(a);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for p in &lat.points {
        if let Some((x, y)) = p.point.affine() {
            xs.push(to_f64(a, &x)?);
            ys.push(to_f64(a, &y)?);
        }
    }
    if xs.is_empty() {
        return Ok(Viewport {
            xmin: -2.0,
            xmax: 2.0,
            ymin: -2.0,
            ymax: 2.0,
        });
    }
    let fold = |v: &[f64], f: fn(f64, f64) -> f64, init: f64| v.iter().copied().fold(init, f);
    let (x0, x1) = (
        fold(&xs, f64::min, f64::INFINITY),
        fold(&xs, f64::max, f64::NEG_INFINITY),
    );
    let (y0, y1) = (
        fold(&ys, f64::min, f64::INFINITY),
        fold(&ys, f64::max, f64::NEG_INFINITY),
    );
    let half = ((x1 - x0).max(y1 - y0) / 2.0).max(0.5) * 1.25;
    let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
    Ok(Viewport {
        xmin: cx - half,
        xmax: cx + half,
        ymin: cy - half,
        ymax: cy + half,
    })
}

/// Computes what to draw. Marker positions come from the exact lattice and
/// are converted to floating point only afterwards.
pub fn scene(a: &Arrangement, viewport: Option<Viewport>) -> Result<Scene> {
    if a.ctx().is_parametric() {
        return Err(Error::NotDrawable("parameter must be specialized".into()));
    }
    if a.ctx().disc().is_some_and(|d| d < 0) {
        return Err(Error::NotDrawable(format!("{} has no real embedding", a.ctx())));
    }
    let v = match viewport {
        Some(v) => v,
        None => auto_viewport(a)?,
    };
    let mut segments = Vec::new();
    let mut infinity = None;
    for (i, l) in a.lines().iter().enumerate() {
        let [p, q, r] = l.coeffs();
        if p.is_zero() && q.is_zero() {
            infinity = Some(i);
            continue;
        }
        if let Some(seg) = clip(&v, to_f64(a, p)?, to_f64(a, q)?, to_f64(a, r)?) {
            segments.push((i, seg));
        }
    }
    let lat = compute_lattice(a);
    let mut markers = Vec::new();
    for (k, p) in lat.points.iter().enumerate() {
        if let Some((x, y)) = p.point.affine() {
            let (x, y) = (to_f64(a, &x)?, to_f64(a, &y)?);
            if v.contains(x, y) {
                markers.push(Marker {
                    x,
                    y,
                    mu: p.mu(),
                    point: k,
                });
            }
        }
    }
    Ok(Scene {
        viewport: v,
        segments,
        markers,
        infinity,
    })
}

pub fn render_svg(a: &Arrangement, viewport: Option<Viewport>) -> Result<String> {
    let s = scene(a, viewport)?;
    let v = s.viewport;
    let px = |x: f64| (x - v.xmin) / (v.xmax - v.xmin) * SIZE;
    let py = |y: f64| (v.ymax - y) / (v.ymax - v.ymin) * SIZE;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    let _ = writeln!(out, r#"<g stroke="black" stroke-width="1">"#);
    for (i, [(x0, y0), (x1, y1)]) in &s.segments {
        let _ = writeln!(
            out,
            r#"<line id="H{}" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
            i + 1,
            px(*x0),
            py(*y0),
            px(*x1),
            py(*y1)
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g font-family="sans-serif" font-size="12" fill="blue">"#);
    for (i, [_, (x1, y1)]) in &s.segments {
        let (lx, ly) = (px(*x1).clamp(10.0, SIZE - 30.0), py(*y1).clamp(14.0, SIZE - 4.0));
        let _ = writeln!(out, r#"<text x="{lx:.3}" y="{ly:.3}">H{}</text>"#, i + 1);
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g fill="red">"#);
    for m in &s.markers {
        let _ = writeln!(
            out,
            r#"<circle cx="{:.3}" cy="{:.3}" r="{:.1}" data-mu="{}"/>"#,
            px(m.x),
            py(m.y),
            1.5 + 1.5 * m.mu as f64,
            m.mu
        );
    }
    let _ = writeln!(out, "</g>");
    if let Some(i) = s.infinity {
        let _ = writeln!(
            out,
            r#"<text x="{:.0}" y="24" font-family="sans-serif" font-size="16">∞ = H{}</text>"#,
            SIZE - 90.0,
            i + 1
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
