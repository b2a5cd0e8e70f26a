//! Deterministic CSV and SVG emitters for the standard figures: the
//! deltoid with tangent lines, reducible skeletons in the half-square, and
//! trace-curve families.
//!
//! CSV cells use the shortest round-trip float formatting, so radians
//! survive a write/read cycle exactly. SVG output is plain polylines with
//! fixed styling; the CSV is the testable artifact.

use crate::momentum::ReducibleSkeleton;
use crate::trace_geometry::{deltoid_point, tangents_through};
use crate::triangle_groups::TraceCurvePoint;
use num_complex::Complex64 as C;
use std::f64::consts::TAU;
use std::fmt::Write as _;

/// Map data coordinates into a fixed SVG viewport.
struct Frame {
    xmin: f64,
    xmax: f64,
    ymin: f64,
    ymax: f64,
    size: f64,
    margin: f64,
}

impl Frame {
    fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Self {
        Frame {
            xmin,
            xmax,
            ymin,
            ymax,
            size: 640.0,
            margin: 40.0,
        }
    }

    fn x(&self, x: f64) -> f64 {
        self.margin + (x - self.xmin) / (self.xmax - self.xmin) * (self.size - 2.0 * self.margin)
    }

    fn y(&self, y: f64) -> f64 {
        // SVG y grows downward
        self.size
            - self.margin
            - (y - self.ymin) / (self.ymax - self.ymin) * (self.size - 2.0 * self.margin)
    }

    fn header(&self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {s} {s}\" width=\"{s}\" height=\"{s}\">\n",
            s = self.size
        )
    }

    fn polyline(&self, pts: &[(f64, f64)], stroke: &str, width: f64) -> String {
        if pts.is_empty() {
            return String::new();
        }
        let mut d = String::from("<polyline fill=\"none\" points=\"");
        for (x, y) in pts {
            let _ = write!(d, "{:.3},{:.3} ", self.x(*x), self.y(*y));
        }
        let _ = writeln!(d, "\" stroke=\"{stroke}\" stroke-width=\"{width}\"/>");
        d
    }

    fn circle(&self, x: f64, y: f64, r: f64, fill: &str) -> String {
        format!(
            "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"{r}\" fill=\"{fill}\"/>\n",
            self.x(x),
            self.y(y)
        )
    }

    fn rect(&self) -> String {
        format!(
            "<rect x=\"{:.3}\" y=\"{:.3}\" width=\"{:.3}\" height=\"{:.3}\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n",
            self.x(self.xmin),
            self.y(self.ymax),
            self.x(self.xmax) - self.x(self.xmin),
            self.y(self.ymin) - self.y(self.ymax),
        )
    }
}

/// Sampled deltoid as CSV: `theta, re, im`.
pub fn deltoid_csv(grid: usize) -> String {
    let grid = grid.max(16);
    let mut out = String::from("theta,re,im\n");
    for i in 0..=grid {
        let t = TAU * i as f64 / grid as f64;
        let z = deltoid_point(t);
        let _ = writeln!(out, "{},{},{}", t, z.re, z.im);
    }
    out
}

/// The deltoid, optionally with the three tangent lines through an interior
/// point.
pub fn deltoid_svg(grid: usize, tangent_point: Option<C>) -> String {
    let frame = Frame::new(-3.4, 3.4, -3.4, 3.4);
    let mut svg = frame.header();
    svg += &frame.rect();
    let grid = grid.max(64);
    let pts: Vec<(f64, f64)> = (0..=grid)
        .map(|i| {
            let z = deltoid_point(TAU * i as f64 / grid as f64);
            (z.re, z.im)
        })
        .collect();
    svg += &frame.polyline(&pts, "#1f4e9c", 2.0);
    if let Some(z) = tangent_point {
        if let Ok(lines) = tangents_through(z) {
            for line in lines {
                // extend the line across the viewport
                let a = line.foot - line.direction * 8.0;
                let b = line.foot + line.direction * 8.0;
                svg += &frame.polyline(&[(a.re, a.im), (b.re, b.im)], "#b34a00", 1.0);
                svg += &frame.circle(line.foot.re, line.foot.im, 3.0, "#b34a00");
            }
        }
        svg += &frame.circle(z.re, z.im, 4.0, "#000");
    }
    svg += "</svg>\n";
    svg
}

/// Skeleton CSV: `kind, piece, x, y` in radians.
pub fn skeleton_csv(sk: &ReducibleSkeleton) -> String {
    let mut out = String::from("kind,piece,x,y\n");
    for (k, v) in sk.vertices.iter().enumerate() {
        let _ = writeln!(out, "vertex,{},{},{}", k, v.x, v.y);
    }
    for (p, piece) in sk.spherical.iter().enumerate() {
        for (x, y) in piece {
            let _ = writeln!(out, "spherical,{},{},{}", p, x, y);
        }
    }
    for (s, seg) in sk.hyperbolic.iter().enumerate() {
        for (p, piece) in seg.pieces.iter().enumerate() {
            for (x, y) in piece {
                let _ = writeln!(out, "hyperbolic[slope={}],{}_{},{},{}", seg.slope, s, p, x, y);
            }
        }
    }
    out
}

/// Skeleton figure: half-square frame, vertices as dots, segments as
/// polylines.
pub fn skeleton_svg(sk: &ReducibleSkeleton) -> String {
    let frame = Frame::new(0.0, TAU, 0.0, TAU);
    let mut svg = frame.header();
    svg += &frame.rect();
    // the diagonal bounding the half-square
    svg += &frame.polyline(&[(0.0, 0.0), (TAU, TAU)], "#bbb", 1.0);
    for piece in &sk.spherical {
        svg += &frame.polyline(piece, "#1f4e9c", 2.0);
    }
    for seg in &sk.hyperbolic {
        for piece in &seg.pieces {
            svg += &frame.polyline(piece, "#b34a00", 2.0);
        }
    }
    for v in &sk.vertices {
        svg += &frame.circle(v.x, v.y, 4.0, "#000");
    }
    svg += "</svg>\n";
    svg
}

/// Trace-curve CSV: `theta, alpha, re_tr_ainv_b, im_tr_ainv_b, chart_id`.
pub fn trace_curves_csv(curves: &[(String, Vec<TraceCurvePoint>)]) -> String {
    let mut out = String::from("theta,alpha,re_tr_ainv_b,im_tr_ainv_b,chart_id\n");
    for (id, pts) in curves {
        for p in pts {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                p.theta, p.alpha, p.tr_ainv_b.re, p.tr_ainv_b.im, id
            );
        }
    }
    out
}

/// Trace-curve families in the complex trace plane.
pub fn trace_curves_svg(curves: &[(String, Vec<TraceCurvePoint>)]) -> String {
    let mut xmin = f64::INFINITY;
    let mut xmax = f64::NEG_INFINITY;
    let mut ymin = f64::INFINITY;
    let mut ymax = f64::NEG_INFINITY;
    for (_, pts) in curves {
        for p in pts {
            xmin = xmin.min(p.tr_ainv_b.re);
            xmax = xmax.max(p.tr_ainv_b.re);
            ymin = ymin.min(p.tr_ainv_b.im);
            ymax = ymax.max(p.tr_ainv_b.im);
        }
    }
    if !xmin.is_finite() {
        (xmin, xmax, ymin, ymax) = (-1.0, 1.0, -1.0, 1.0);
    }
    let pad_x = 0.1 * (xmax - xmin).max(1e-6);
    let pad_y = 0.1 * (ymax - ymin).max(1e-6);
    let frame = Frame::new(xmin - pad_x, xmax + pad_x, ymin - pad_y, ymax + pad_y);
    let palette = ["#1f4e9c", "#b34a00", "#2e7d32", "#6a1b9a", "#00695c", "#c62828"];
    let mut svg = frame.header();
    svg += &frame.rect();
    for (k, (_, pts)) in curves.iter().enumerate() {
        let xy: Vec<(f64, f64)> = pts.iter().map(|p| (p.tr_ainv_b.re, p.tr_ainv_b.im)).collect();
        svg += &frame.polyline(&xy, palette[k % palette.len()], 1.5);
    }
    svg += "</svg>\n";
    svg
}
