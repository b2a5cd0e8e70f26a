//! Representations of `(p,q,r)`-groups: enumeration of elliptic classes of
//! finite order, relation checking, the standard component charts, and
//! trace curves for figures.

use crate::complex3::CMat3;
use crate::decompose::{chart_sample, component_chart, ChartSample, ComponentChart, EllipticTriple};
use crate::error::{Error, Result};
use crate::hermitian::PointType;
use crate::isometry::AnglePair;
use crate::tol;
use num_complex::Complex64 as C;
use std::f64::consts::TAU;

/// A triangle-group signature with `1/p + 1/q + 1/r < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PQRSignature {
    pub p: u32,
    pub q: u32,
    pub r: u32,
}

impl PQRSignature {
    pub fn new(p: u32, q: u32, r: u32) -> Result<Self> {
        if p < 2 || q < 2 || r < 2 {
            return Err(Error::InvalidRelation);
        }
        if 1.0 / p as f64 + 1.0 / q as f64 + 1.0 / r as f64 >= 1.0 {
            return Err(Error::InvalidRelation);
        }
        Ok(PQRSignature { p, q, r })
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All elliptic conjugacy classes of projective order exactly `p`: pairs
/// `(2 pi k / p, 2 pi l / p)` with `0 <= l <= k < p`, `(k,l) != (0,0)` and
/// `gcd(k, l, p) = 1`.
pub fn elliptic_classes_of_order(p: u32) -> Vec<AnglePair> {
    let mut out = Vec::new();
    if p < 2 {
        return out;
    }
    for k in 0..p {
        for l in 0..=k {
            if k == 0 && l == 0 {
                continue;
            }
            if gcd(gcd(k, l), p) != 1 {
                continue;
            }
            out.push(AnglePair::new(
                TAU * k as f64 / p as f64,
                TAU * l as f64 / p as f64,
            ));
        }
    }
    out
}

/// Projective order of the class `E(2 pi k/p, 2 pi l/p)`: the smallest `n`
/// with `E^n` scalar.
pub fn class_order(k: u32, l: u32, p: u32) -> u32 {
    p / gcd(gcd(k, l), p)
}

/// True when `A^p`, `B^q`, `C^r` are all scalar (projective identities).
pub fn relation_check(t: &EllipticTriple, sig: &PQRSignature) -> bool {
    let scalar = |m: &CMat3| -> bool {
        let s = m.trace() / C::new(3.0, 0.0);
        m.dist(&CMat3::identity().scale(s)) <= tol::DECOMPOSABILITY * m.frobenius().max(1.0)
    };
    scalar(t.a.pow(sig.p).matrix())
        && scalar(t.b.pow(sig.q).matrix())
        && scalar(t.c.pow(sig.r).matrix())
}

/// The angle pair of the standard order-`p` rotation
/// `diag(e^{2 i pi / p}, e^{-2 i pi / p}, 1)`.
pub fn rfuchsian_class(p: u32) -> AnglePair {
    AnglePair::new(TAU / p as f64, TAU - TAU / p as f64)
}

/// Chart of the R-Fuchsian component: classes from the standard rotations,
/// all negative-type eigenvalues equal to 1, so the three reflection angles
/// coincide and the domain is `(2 pi / m, 2 pi - 2 pi / m)` for
/// `m = min(p,q,r)`.
pub fn rfuchsian_chart(sig: &PQRSignature) -> Result<ComponentChart> {
    let chart = component_chart(
        &rfuchsian_class(sig.p),
        &rfuchsian_class(sig.q),
        &rfuchsian_class(sig.r),
        [PointType::Negative; 3],
    )?;
    debug_assert!(chart.beta.abs() < 1e-9 && chart.gamma.abs() < 1e-9);
    Ok(chart)
}

/// The exotic `(4,5,20)` component: angle pairs `(3 pi/2, pi)`,
/// `(6 pi/5, 2 pi/5)`, `(8 pi/5, 3 pi/10)`, with reflection angles
/// `(theta, theta - pi/2, theta - 21 pi/10)` and domain `(pi, 3 pi/2)`.
pub fn exotic_chart_45_20() -> Result<ComponentChart> {
    use std::f64::consts::PI;
    component_chart(
        &AnglePair::new(1.5 * PI, PI),
        &AnglePair::new(1.2 * PI, 0.4 * PI),
        &AnglePair::new(1.6 * PI, 0.3 * PI),
        [PointType::Negative; 3],
    )
}

/// Which chart parameter is held fixed along a trace curve.
#[derive(Clone, Copy, Debug)]
pub enum CurveLevel {
    Theta(f64),
    Alpha(f64),
}

/// One sampled point of a trace curve.
#[derive(Clone, Debug)]
pub struct TraceCurvePoint {
    pub theta: f64,
    pub alpha: f64,
    pub tr_ainv_b: C,
}

/// Sample `Tr(A^{-1} B)` along a level curve of the chart.
pub fn trace_curve(
    chart: &ComponentChart,
    fixed: CurveLevel,
    grid: usize,
) -> Result<Vec<TraceCurvePoint>> {
    let grid = grid.max(2);
    let mut out = Vec::new();
    match fixed {
        CurveLevel::Theta(theta) => {
            if !chart.contains_theta(theta) {
                return Err(Error::OutOfChart);
            }
            let interval = chart.alpha_interval(theta);
            let (lo, hi) = match interval {
                crate::decompose::AlphaInterval::Arc { lo, hi } => (lo, hi),
                crate::decompose::AlphaInterval::Full => (0.0, TAU),
                crate::decompose::AlphaInterval::Empty => return Err(Error::OutOfChart),
            };
            for i in 0..=grid {
                let alpha = lo + (hi - lo) * (i as f64 + 0.5) / (grid as f64 + 1.0);
                if let Ok(s) = chart_sample(chart, theta, alpha) {
                    out.push(trace_point(&s));
                }
            }
        }
        CurveLevel::Alpha(alpha) => {
            for (lo, hi) in &chart.theta_domain {
                for i in 0..=grid {
                    let theta = lo + (hi - lo) * (i as f64 + 0.5) / (grid as f64 + 1.0);
                    if !chart.alpha_interval(theta).contains(alpha) {
                        continue;
                    }
                    if let Ok(s) = chart_sample(chart, theta, alpha) {
                        out.push(trace_point(&s));
                    }
                }
            }
            if out.is_empty() {
                return Err(Error::OutOfChart);
            }
        }
    }
    Ok(out)
}

fn trace_point(s: &ChartSample) -> TraceCurvePoint {
    TraceCurvePoint {
        theta: s.theta,
        alpha: s.alpha,
        tr_ainv_b: s.triple.a.inverse().compose(&s.triple.b).trace(),
    }
}
