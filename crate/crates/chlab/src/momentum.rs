//! Reducible skeletons of the momentum map `(A, B) -> [AB]` for a pair of
//! regular elliptic conjugacy classes.
//!
//! Angle pairs live in a half-square of size `2 pi` with the Möbius
//! identification; the canonical representative of an unordered pair is
//! `(max, min)` with both coordinates wrapped into `[0, 2 pi)`.
//!
//! The image of the totally reducible pairs is two vertices (component-wise
//! sums of the class pairs for the two axis pairings). Pairs sharing a
//! negative-type eigenvector sweep the slope `-1` chord connecting the
//! vertices; pairs sharing a positive-type eigenvector sweep segments of
//! slope 2 or 1/2 issued from the vertices, ending where the product
//! leaves the elliptic region.

use crate::complex3::{angle_dist, wrap_2pi, CMat3};
use crate::cubic::quadratic_roots;
use crate::decompose::{
    chart_sample, component_chart, construct_decomposition, decomposability_test,
    irreducible_config, EllipticTriple,
};
use crate::error::{Error, Result};
use crate::hermitian::{HermitianForm, PointType};
use crate::isometry::{
    angle_pair, character_point, goldman_discriminant, principal_cbrt, su21_lift, AnglePair,
    CharacterPoint,
};
use crate::tol;
use num_complex::Complex64 as C;
use std::f64::consts::{PI, TAU};

/// Canonical point of the half-square: `y <= x`, both in `[0, 2 pi)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfSquarePoint {
    pub x: f64,
    pub y: f64,
}

impl HalfSquarePoint {
    pub fn canonical(a: f64, b: f64) -> Self {
        let p = wrap_2pi(a);
        let q = wrap_2pi(b);
        HalfSquarePoint {
            x: p.max(q),
            y: p.min(q),
        }
    }

    pub fn from_pair(p: &AnglePair) -> Self {
        HalfSquarePoint::canonical(p.alpha1, p.alpha2)
    }

    /// Wrap-aware distance between canonical points (unordered pairs).
    pub fn dist(&self, other: &Self) -> f64 {
        let direct = angle_dist(self.x, other.x).max(angle_dist(self.y, other.y));
        let crossed = angle_dist(self.x, other.y).max(angle_dist(self.y, other.x));
        direct.min(crossed)
    }
}

/// One hyperbolic reducible segment: polyline pieces in the half-square
/// plus its nominal slope (2 or 1/2 after canonical reordering).
#[derive(Clone, Debug)]
pub struct SkeletonSegment {
    pub slope: f64,
    pub pieces: Vec<Vec<(f64, f64)>>,
}

/// Vertices and reducible segments of the skeleton.
#[derive(Clone, Debug)]
pub struct ReducibleSkeleton {
    pub vertices: [HalfSquarePoint; 2],
    pub spherical: Vec<Vec<(f64, f64)>>,
    pub hyperbolic: Vec<SkeletonSegment>,
}

/// Membership of a class in the reducible skeleton.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkeletonMembership {
    NotOnSkeleton,
    Spherical,
    Hyperbolic,
    Vertex,
}

fn require_regular(p: &AnglePair) -> Result<()> {
    if !p.is_regular() {
        return Err(Error::NotRegularElliptic);
    }
    Ok(())
}

/// The two totally reducible vertices: component-wise sums for the two
/// pairings, canonicalized.
pub fn totally_reducible_vertices(
    c1: &AnglePair,
    c2: &AnglePair,
) -> Result<[HalfSquarePoint; 2]> {
    require_regular(c1)?;
    require_regular(c2)?;
    Ok([
        HalfSquarePoint::canonical(c1.alpha1 + c2.alpha1, c1.alpha2 + c2.alpha2),
        HalfSquarePoint::canonical(c1.alpha1 + c2.alpha2, c1.alpha2 + c2.alpha1),
    ])
}

/// Raw (unwrapped) chord endpoints, each sorted descending. The spherical
/// segment is the straight chord between them in these coordinates.
fn raw_chord(c1: &AnglePair, c2: &AnglePair) -> ((f64, f64), (f64, f64)) {
    let sort = |a: f64, b: f64| if a >= b { (a, b) } else { (b, a) };
    (
        sort(c1.alpha1 + c2.alpha1, c1.alpha2 + c2.alpha2),
        sort(c1.alpha1 + c2.alpha2, c1.alpha2 + c2.alpha1),
    )
}

fn diag_e(p: &AnglePair, swapped: bool) -> CMat3 {
    let (a, b) = if swapped {
        (p.alpha2, p.alpha1)
    } else {
        (p.alpha1, p.alpha2)
    };
    CMat3::diag(
        C::from_polar(1.0, a),
        C::from_polar(1.0, b),
        C::new(1.0, 0.0),
    )
}

/// Eigenvalues of the leading 2x2 block.
fn block2_eigen(m: &CMat3, rows: [usize; 2]) -> [C; 2] {
    let a = m.0[rows[0]][rows[0]];
    let b = m.0[rows[0]][rows[1]];
    let c = m.0[rows[1]][rows[0]];
    let d = m.0[rows[1]][rows[1]];
    quadratic_roots(C::new(1.0, 0.0), -(a + d), a * d - b * c)
}

/// Angle pair of a product that fixes `e3` with eigenvalue 1 and acts
/// unitarily on the positive plane.
fn pair_of_positive_block(m: &CMat3) -> HalfSquarePoint {
    let eig = block2_eigen(m, [0, 1]);
    HalfSquarePoint::canonical(eig[0].arg(), eig[1].arg())
}

/// Split a sampled curve into polyline pieces at wrap discontinuities.
fn split_pieces(points: Vec<(f64, f64)>) -> Vec<Vec<(f64, f64)>> {
    let mut pieces = Vec::new();
    let mut current: Vec<(f64, f64)> = Vec::new();
    for p in points {
        if let Some(last) = current.last() {
            if (p.0 - last.0).abs() > PI || (p.1 - last.1).abs() > PI {
                pieces.push(std::mem::take(&mut current));
            }
        }
        current.push(p);
    }
    if current.len() > 1 {
        pieces.push(current);
    } else if let Some(p) = current.first() {
        if pieces.is_empty() {
            pieces.push(vec![*p]);
        }
    }
    pieces.retain(|p| !p.is_empty());
    pieces
}

/// Spherical sweep: rotate the positive-plane eigenbasis of `B` against
/// `A`, holding the common fixed point `e3`.
fn spherical_sweep(c1: &AnglePair, c2: &AnglePair, resolution: usize) -> Vec<HalfSquarePoint> {
    let a0 = diag_e(c1, false);
    let b0 = diag_e(c2, false);
    let n = resolution.max(2);
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let t = (PI / 2.0) * i as f64 / n as f64;
        let (ct, st) = (t.cos(), t.sin());
        let mut v = CMat3::identity();
        v.0[0][0] = C::new(ct, 0.0);
        v.0[0][1] = C::new(-st, 0.0);
        v.0[1][0] = C::new(st, 0.0);
        v.0[1][1] = C::new(ct, 0.0);
        let b = v * b0 * v.transpose();
        out.push(pair_of_positive_block(&(a0 * b)));
    }
    out
}

/// One hyperbolic germ: classes aligned with shared positive eigenvector
/// `e1` carrying `alpha_i + beta_j`; boost the `(e2, e3)` plane until the
/// block product goes parabolic. Returns the swept pairs and the signed
/// unwrapped range of the negative eigenvalue argument.
struct HyperbolicGerm {
    points: Vec<HalfSquarePoint>,
    shared_start: f64,
    other_start: f64,
    nu_end: f64,
}

fn hyperbolic_germ(
    c1: &AnglePair,
    c2: &AnglePair,
    i_swapped: bool,
    j_swapped: bool,
    resolution: usize,
) -> Option<HyperbolicGerm> {
    let a0 = diag_e(c1, i_swapped);
    let b0 = diag_e(c2, j_swapped);
    let boost = |t: f64| -> CMat3 {
        let mut w = CMat3::identity();
        w.0[1][1] = C::new(t.cosh(), 0.0);
        w.0[1][2] = C::new(t.sinh(), 0.0);
        w.0[2][1] = C::new(t.sinh(), 0.0);
        w.0[2][2] = C::new(t.cosh(), 0.0);
        w
    };
    let det = (a0 * b0).det();
    let scale = principal_cbrt(det).finv();
    let elliptic = |t: f64| -> bool {
        let m = a0 * boost(t) * b0 * boost(-t);
        goldman_discriminant(m.trace() * scale) < -1e-12
    };
    if !elliptic(0.0) {
        return None; // degenerate vertex (product special elliptic there)
    }
    // bracket the parabolic boundary
    let mut lo = 0.0;
    let mut hi = 0.05;
    while elliptic(hi) && hi < 60.0 {
        lo = hi;
        hi *= 1.6;
    }
    if hi >= 60.0 {
        return None;
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if elliptic(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t_max = lo;
    let n = resolution.max(2);
    let mut points = Vec::with_capacity(n + 1);
    let mut nu = 0.0f64;
    let mut prev_neg_arg: Option<f64> = None;
    for k in 0..=n {
        // denser sampling near the parabolic end where curvature in t is high
        let t = t_max * (k as f64 / n as f64);
        let m = a0 * boost(t) * b0 * boost(-t);
        let block = block2_eigen(&m, [1, 2]);
        // negative-type eigenvector of the (1,1)-block
        let neg = negative_block_eigenvalue(&m, block);
        let pos = if (block[0] - neg).norm() < (block[1] - neg).norm() {
            block[1]
        } else {
            block[0]
        };
        let shared = m.0[0][0];
        points.push(HalfSquarePoint::canonical(
            (shared / neg).arg(),
            (pos / neg).arg(),
        ));
        let na = neg.arg();
        if let Some(prev) = prev_neg_arg {
            let mut d = na - prev;
            while d > PI {
                d -= TAU;
            }
            while d < -PI {
                d += TAU;
            }
            nu += d;
        }
        prev_neg_arg = Some(na);
    }
    Some(HyperbolicGerm {
        points,
        shared_start: wrap_2pi(pick_angle(c1, i_swapped) + pick_angle(c2, j_swapped)),
        other_start: wrap_2pi(pick_other(c1, i_swapped) + pick_other(c2, j_swapped)),
        nu_end: nu,
    })
}

fn pick_angle(p: &AnglePair, swapped: bool) -> f64 {
    if swapped {
        p.alpha2
    } else {
        p.alpha1
    }
}

fn pick_other(p: &AnglePair, swapped: bool) -> f64 {
    if swapped {
        p.alpha1
    } else {
        p.alpha2
    }
}

fn negative_block_eigenvalue(m: &CMat3, block: [C; 2]) -> C {
    // eigenvector of the (e2,e3) block for eigenvalue lambda:
    // (b, lambda - a) with the block entries; type = |v2|^2 - |v3|^2
    let a = m.0[1][1];
    let b = m.0[1][2];
    let c = m.0[2][1];
    let d = m.0[2][2];
    for lam in block {
        let v1 = (b, lam - a);
        let v2 = (lam - d, c);
        let v = if v1.0.norm_sqr() + v1.1.norm_sqr() >= v2.0.norm_sqr() + v2.1.norm_sqr() {
            v1
        } else {
            v2
        };
        if v.0.norm_sqr() - v.1.norm_sqr() < 0.0 {
            return lam;
        }
    }
    // fall back to the smaller-type one
    block[1]
}

/// Compute the full reducible skeleton.
pub fn reducible_skeleton(
    c1: &AnglePair,
    c2: &AnglePair,
    resolution: usize,
) -> Result<ReducibleSkeleton> {
    let vertices = totally_reducible_vertices(c1, c2)?;
    let sweep = spherical_sweep(c1, c2, resolution);

    // internal consistency: every swept point sits on the slope -1 chord
    debug_assert!({
        sweep
            .iter()
            .all(|p| on_spherical_chord(p, c1, c2, 1e-7))
    });

    let spherical = split_pieces(sweep.iter().map(|p| (p.x, p.y)).collect());
    let mut hyperbolic = Vec::new();
    for i_swapped in [false, true] {
        for j_swapped in [false, true] {
            if let Some(germ) = hyperbolic_germ(c1, c2, i_swapped, j_swapped, resolution) {
                if germ.points.len() < 2 || germ.nu_end.abs() < 1e-9 {
                    continue;
                }
                let slope = estimate_slope(&germ.points);
                hyperbolic.push(SkeletonSegment {
                    slope,
                    pieces: split_pieces(germ.points.iter().map(|p| (p.x, p.y)).collect()),
                });
            }
        }
    }
    Ok(ReducibleSkeleton {
        vertices,
        spherical,
        hyperbolic,
    })
}

fn estimate_slope(points: &[HalfSquarePoint]) -> f64 {
    for w in points.windows(2) {
        let dx = w[1].x - w[0].x;
        let dy = w[1].y - w[0].y;
        if dx.abs() > 1e-9 && dy.abs() > 1e-9 && dx.abs() < PI && dy.abs() < PI {
            let s = (dy / dx).abs();
            return if s > 1.0 { 2.0 } else { 0.5 };
        }
    }
    2.0
}

/// Test whether a canonical point lies on the spherical chord between the
/// raw vertices (including wrap and the unordered flip).
fn on_spherical_chord(p: &HalfSquarePoint, c1: &AnglePair, c2: &AnglePair, atol: f64) -> bool {
    let (v1, v2) = raw_chord(c1, c2);
    let dx = v2.0 - v1.0;
    let dy = v2.1 - v1.1;
    for (px, py) in [(p.x, p.y), (p.y, p.x)] {
        for k in -1..=2 {
            let target = px + TAU * k as f64;
            let s = if dx.abs() > 1e-12 {
                (target - v1.0) / dx
            } else if (target - v1.0).abs() < atol {
                0.5
            } else {
                continue;
            };
            if !(-1e-9..=1.0 + 1e-9).contains(&s) {
                continue;
            }
            let y = v1.1 + s * dy;
            if angle_dist(y, py) <= atol {
                return true;
            }
        }
    }
    false
}

/// Membership on the skeleton per the reducible-eigenvalue congruences.
///
/// Spherical: `3 (a3 + b3 - g3) = 0 mod 2 pi` for the negative-type
/// eigenvalue arguments, written class-wise as
/// `(g1 + g2) - (a1 + a2) - (b1 + b2) = 0 mod 2 pi`, plus the point must
/// lie on the chord between the vertices. Hyperbolic: the analogous
/// congruence for a shared positive eigenvalue over the eight pairings,
/// plus the point must lie on the realized slope 2 (or 1/2) sweep.
pub fn skeleton_membership(
    c3: &AnglePair,
    c1: &AnglePair,
    c2: &AnglePair,
) -> Result<SkeletonMembership> {
    require_regular(c1)?;
    require_regular(c2)?;
    require_regular(c3)?;
    let p = HalfSquarePoint::from_pair(c3);
    let vertices = totally_reducible_vertices(c1, c2)?;
    if vertices.iter().any(|v| v.dist(&p) <= tol::SKELETON) {
        return Ok(SkeletonMembership::Vertex);
    }

    let sum1 = c1.alpha1 + c1.alpha2;
    let sum2 = c2.alpha1 + c2.alpha2;
    let sum3 = c3.alpha1 + c3.alpha2;

    // spherical congruence and chord
    if angle_dist(sum3 - sum1 - sum2, 0.0) <= 3.0 * tol::SKELETON
        && on_spherical_chord(&p, c1, c2, tol::SKELETON)
    {
        return Ok(SkeletonMembership::Spherical);
    }

    // hyperbolic pairings
    for i_swapped in [false, true] {
        for j_swapped in [false, true] {
            let a_sh = pick_angle(c1, i_swapped);
            let b_sh = pick_angle(c2, j_swapped);
            for g_sh in [c3.alpha1, c3.alpha2] {
                let congruence = 3.0 * (a_sh + b_sh - g_sh) - (sum1 + sum2 - sum3);
                if angle_dist(congruence, 0.0) > 3.0 * tol::SKELETON {
                    continue;
                }
                // candidate: verify against the realized sweep
                if let Some(germ) = hyperbolic_germ(c1, c2, i_swapped, j_swapped, 64) {
                    if on_hyperbolic_germ(&p, &germ, tol::SKELETON) {
                        return Ok(SkeletonMembership::Hyperbolic);
                    }
                }
            }
        }
    }
    Ok(SkeletonMembership::NotOnSkeleton)
}

/// The germ curve is `nu -> (shared0 - nu, other0 - 2 nu)` canonicalized,
/// for `nu` in the realized (signed) range.
fn on_hyperbolic_germ(p: &HalfSquarePoint, germ: &HyperbolicGerm, atol: f64) -> bool {
    let (lo, hi) = if germ.nu_end >= 0.0 {
        (0.0, germ.nu_end)
    } else {
        (germ.nu_end, 0.0)
    };
    for (px, py) in [(p.x, p.y), (p.y, p.x)] {
        // px = shared0 - nu mod 2pi
        let base = germ.shared_start - px;
        for k in -2..=2 {
            let nu = base + TAU * k as f64;
            if nu < lo - 1e-7 || nu > hi + 1e-7 {
                continue;
            }
            let other = germ.other_start - 2.0 * nu;
            if angle_dist(other, py) <= atol {
                return true;
            }
        }
    }
    false
}

/// Result of probing the fiber of the momentum map above `c3`.
#[derive(Clone, Debug)]
pub struct FiberProbeReport {
    pub membership: SkeletonMembership,
    pub outcome: FiberOutcome,
}

#[derive(Clone, Debug)]
pub enum FiberOutcome {
    /// Off the skeleton: no decomposable pairs in the fiber.
    Empty,
    /// The fiber contains only (conjugate) reducible pairs.
    Point,
    /// Two-dimensional fully decomposable fiber.
    DecomposableFamily {
        samples_checked: usize,
        all_decomposable: bool,
        /// Largest pairwise deviation of the boundary character points,
        /// compared up to cube roots of unity (the unique-reducible-pair
        /// surrogate).
        boundary_character_spread: f64,
    },
}

/// Probe the fiber above `c3` for the pair of classes `(c1, c2)`: check
/// skeleton membership, build the relative chart for `(c1, c2, inverse of
/// c3)` and sample it.
pub fn fiber_probe(
    c3: &AnglePair,
    c1: &AnglePair,
    c2: &AnglePair,
    samples: usize,
) -> Result<FiberProbeReport> {
    let membership = skeleton_membership(c3, c1, c2)?;
    if membership == SkeletonMembership::NotOnSkeleton {
        return Ok(FiberProbeReport {
            membership,
            outcome: FiberOutcome::Empty,
        });
    }
    let class_c = c3.inverse_class();
    let chart = component_chart(c1, c2, &class_c, [PointType::Negative; 3])?;
    // collect sampleable thetas: alpha interval must be nonempty
    let mut thetas = Vec::new();
    let want = samples.max(4);
    for (lo, hi) in &chart.theta_domain {
        let n = want.max(8);
        for i in 0..n {
            let theta = lo + (hi - lo) * (i as f64 + 0.5) / n as f64;
            if chart.alpha_interval(theta).midpoint().is_some() {
                thetas.push(theta);
            }
        }
    }
    if chart.is_empty() || thetas.is_empty() {
        return Ok(FiberProbeReport {
            membership,
            outcome: FiberOutcome::Point,
        });
    }

    let mut checked = 0usize;
    let mut all_ok = true;
    let mut boundary_points: Vec<CharacterPoint> = Vec::new();
    for theta in thetas.iter().take(want) {
        let interval = chart.alpha_interval(*theta);
        let alpha = match interval.midpoint() {
            Some(a) => a,
            None => continue,
        };
        match chart_sample(&chart, *theta, alpha) {
            Ok(s) => {
                let ok = irreducible_config(&s.triple, [PointType::Negative; 3])
                    .map(|cfg| {
                        decomposability_test(&s.triple, &cfg)
                            && construct_decomposition(&s.triple, &cfg).is_ok()
                    })
                    .unwrap_or(false);
                all_ok &= ok;
                checked += 1;
            }
            Err(_) => {
                all_ok = false;
            }
        }
        // boundary sample near cos(alpha) = delta
        if let crate::decompose::AlphaInterval::Arc { lo, hi } = interval {
            let eps = 1e-4 * (hi - lo).max(1e-3);
            if let Ok(s) = chart_sample(&chart, *theta, lo + eps) {
                boundary_points.push(character_point(&s.triple.a, &s.triple.b));
            }
        }
    }
    let mut spread = 0.0f64;
    for i in 0..boundary_points.len() {
        for j in (i + 1)..boundary_points.len() {
            let a = &boundary_points[i];
            let b = &boundary_points[j];
            let d = char_point_deviation(a, b);
            spread = spread.max(d);
        }
    }
    Ok(FiberProbeReport {
        membership,
        outcome: FiberOutcome::DecomposableFamily {
            samples_checked: checked,
            all_decomposable: all_ok,
            boundary_character_spread: spread,
        },
    })
}

fn char_point_deviation(a: &CharacterPoint, b: &CharacterPoint) -> f64 {
    use crate::isometry::omega_dist;
    omega_dist(a.tr_a, b.tr_a)
        .max(omega_dist(a.tr_b, b.tr_b))
        .max(omega_dist(a.tr_ab, b.tr_ab))
        .max(omega_dist(a.tr_ainv_b, b.tr_ainv_b))
        .max((a.tr_comm - b.tr_comm).norm())
}

/// Realize a spherical-reducible pair on the chord at parameter `s` in
/// `[0, 1]` and return it with the product class. Used by tests as the
/// ground-truth construction of on-segment classes.
pub fn spherical_reducible_pair(
    c1: &AnglePair,
    c2: &AnglePair,
    s: f64,
) -> Result<(EllipticTriple, AnglePair)> {
    require_regular(c1)?;
    require_regular(c2)?;
    let t = (PI / 2.0) * s.clamp(0.0, 1.0);
    let a0 = diag_e(c1, false);
    let b0 = diag_e(c2, false);
    let (ct, st) = (t.cos(), t.sin());
    let mut v = CMat3::identity();
    v.0[0][0] = C::new(ct, 0.0);
    v.0[0][1] = C::new(-st, 0.0);
    v.0[1][0] = C::new(st, 0.0);
    v.0[1][1] = C::new(ct, 0.0);
    let b = v * b0 * v.transpose();
    let form = HermitianForm::canonical();
    let a = su21_lift(&a0, &form)?[0];
    let b = su21_lift(&b, &form)?[0];
    let prod_class = angle_pair(&a.compose(&b))?;
    let t = EllipticTriple::from_pair(a, b)?;
    Ok((t, prod_class))
}
