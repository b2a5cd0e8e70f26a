//! Decomposability of elliptic triples into products of complex
//! reflections: the numerical test, the explicit construction, and the
//! `(theta, alpha)` chart of relative character-variety components.
//!
//! A triple `(A, B, C)` with `A B C = 1` is decomposable when there are
//! reflections with `A = R1 R2^{-1}`, `B = R2 R3^{-1}`, `C = R3 R1^{-1}`.
//! For a choice of fixed points in irreducible configuration with preferred
//! eigenvalues `lambda_A, lambda_B, lambda_C`, decomposability is the
//! codimension-one condition `(lambda_A lambda_B lambda_C)^3 = 1`,
//! equivalently the cross-ratio `X(P_A, P_B, P_C, A^{-1} P_C) = 1`.
//!
//! The construction mirrors the constructive proof: `R2` is the reflection
//! fixing the line through `P_A, P_B` that maps `P_C` to `A^{-1} P_C`; its
//! rotation factor is solved from the polar component and must come out of
//! unit modulus, which is exactly the decomposability condition surfacing
//! numerically.

use crate::complex3::{wrap_2pi, CMat3, CVec3};
use crate::error::{Error, Result};
use crate::hermitian::{cross_ratio, point_type, polar_of_pair, HermitianForm, PointType};
use crate::isometry::{angle_pair, omegas, AnglePair, SU21Element};
use crate::reflections::{delta_bound, ComplexReflection, ReflectionTriple};
use crate::tol;
use num_complex::Complex64 as C;
use std::f64::consts::TAU;

/// Three elliptic elements with `A B C = omega * Id` in SU(2,1).
#[derive(Clone, Copy, Debug)]
pub struct EllipticTriple {
    pub a: SU21Element,
    pub b: SU21Element,
    pub c: SU21Element,
    pub omega: C,
}

impl EllipticTriple {
    pub fn new(a: SU21Element, b: SU21Element, c: SU21Element) -> Result<Self> {
        let p = a.compose(&b).compose(&c);
        let mut best = (f64::INFINITY, C::new(1.0, 0.0));
        for w in omegas() {
            let d = p.matrix().dist(&CMat3::identity().scale(w));
            if d < best.0 {
                best = (d, w);
            }
        }
        if best.0 > tol::TRIPLE_PRODUCT * 3.0 {
            return Err(Error::DegenerateConfiguration);
        }
        for m in [&a, &b, &c] {
            if !m.classify().is_elliptic() {
                return Err(Error::NotElliptic);
            }
        }
        Ok(EllipticTriple {
            a,
            b,
            c,
            omega: best.1,
        })
    }

    /// Close a pair into a triple with `C = (A B)^{-1}` (so `omega = 1`).
    pub fn from_pair(a: SU21Element, b: SU21Element) -> Result<Self> {
        let c = a.compose(&b).inverse();
        EllipticTriple::new(a, b, c)
    }

    pub fn conjugate_by(&self, p: &SU21Element) -> Self {
        EllipticTriple {
            a: self.a.conjugate_by(p),
            b: self.b.conjugate_by(p),
            c: self.c.conjugate_by(p),
            omega: self.omega,
        }
    }

    pub fn classes(&self) -> Result<[AnglePair; 3]> {
        Ok([
            angle_pair(&self.a)?,
            angle_pair(&self.b)?,
            angle_pair(&self.c)?,
        ])
    }
}

/// Fixed points of an elliptic triple in irreducible configuration, with
/// the preferred eigenvalues read off the lifts.
#[derive(Clone, Copy, Debug)]
pub struct FixedPointConfig {
    /// `(P_A, P_B, P_C)`.
    pub points: [CVec3; 3],
    pub types: [PointType; 3],
    /// `(lambda_A, lambda_B, lambda_C)`: eigenvalues of the lifts of
    /// `A, B, C` at the fixed points.
    pub lambdas: [C; 3],
    /// Eigenvalue of `A B` at `P_C`; equals `omega * conj(lambda_C)`.
    pub lambda_ab: C,
}

/// Eigenvalue of `m` on an eigenvector `v`, read at the dominant component.
fn eigenvalue_at(m: &CMat3, v: &CVec3) -> C {
    let w = *m * *v;
    let k = v.argmax();
    w.0[k] / v.0[k]
}

/// True when `a` and `b` have a common eigenvector (projectively).
fn share_eigenvector(a: &SU21Element, b: &SU21Element) -> Result<bool> {
    let ea = a.eigen()?;
    let eb = b.eigen()?;
    for e in &eb.entries {
        let img = *a.matrix() * e.vector;
        if e.vector.projective_gap(&img) < 1e-8 {
            return Ok(true);
        }
    }
    for e in &ea.entries {
        let img = *b.matrix() * e.vector;
        if e.vector.projective_gap(&img) < 1e-8 {
            return Ok(true);
        }
    }
    // two 2-dimensional eigenspaces in C^3 always intersect
    let rep = |es: &crate::hermitian::EigenSystem| {
        let v = es.values();
        (v[0] - v[1]).norm() < 1e-7 || (v[0] - v[2]).norm() < 1e-7 || (v[1] - v[2]).norm() < 1e-7
    };
    Ok(rep(&ea) && rep(&eb))
}

/// Select fixed points of the requested types `(eps_A, eps_B, eps_C)` in
/// irreducible configuration and read the preferred eigenvalues.
///
/// `want` entries must be `Negative` or `Positive`. Negative-type fixed
/// points are unique for elliptic elements; positive-type requests iterate
/// over both candidates in deterministic order and keep the first
/// combination that is pairwise non-orthogonal.
pub fn irreducible_config(t: &EllipticTriple, want: [PointType; 3]) -> Result<FixedPointConfig> {
    irreducible_configs(t, want).map(|v| v[0])
}

/// All irreducible configurations with the requested types, in the
/// deterministic candidate order. Positive-type requests have up to two
/// eigenvectors per element, so up to eight configurations can exist; a
/// triple may be decomposable for some of them and not for others.
pub fn irreducible_configs(
    t: &EllipticTriple,
    want: [PointType; 3],
) -> Result<Vec<FixedPointConfig>> {
    if want.contains(&PointType::Null) {
        return Err(Error::TypeUnavailable);
    }
    if share_eigenvector(&t.a, &t.b)? {
        return Err(Error::ReducibleTriple);
    }
    let form = *t.a.form();
    let systems = [t.a.eigen()?, t.b.eigen()?, t.c.eigen()?];
    let mut candidates: [Vec<(C, CVec3)>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for (k, es) in systems.iter().enumerate() {
        // eigen entries are already sorted by eigenvalue argument
        for e in es.entries.iter().filter(|e| e.point_type == want[k]) {
            candidates[k].push((e.value, e.vector));
        }
        if candidates[k].is_empty() {
            return Err(Error::TypeUnavailable);
        }
    }
    let mut out = Vec::new();
    for (la, pa) in &candidates[0] {
        for (lb, pb) in &candidates[1] {
            for (lc, pc) in &candidates[2] {
                let ok = |u: &CVec3, v: &CVec3| -> Result<bool> {
                    let nu = u.normalize_max()?;
                    let nv = v.normalize_max()?;
                    Ok(nu.projective_gap(&nv) > 1e-8
                        && form.inner(&nu, &nv).norm() > tol::POINT_TYPE)
                };
                if ok(pa, pb)? && ok(pb, pc)? && ok(pa, pc)? {
                    let lambda_ab = eigenvalue_at(t.a.compose(&t.b).matrix(), pc);
                    out.push(FixedPointConfig {
                        points: [*pa, *pb, *pc],
                        types: want,
                        lambdas: [*la, *lb, *lc],
                        lambda_ab,
                    });
                }
            }
        }
    }
    if out.is_empty() {
        return Err(Error::TypeUnavailable);
    }
    Ok(out)
}

/// Both sides of the decomposability criterion for one configuration.
#[derive(Clone, Copy, Debug)]
pub struct DecomposabilityReport {
    /// `lambda_A lambda_B lambda_C`.
    pub lambda_product: C,
    /// Its cube; decomposable iff this is 1.
    pub cubed: C,
    pub lambda_ok: bool,
    /// `X(P_A, P_B, P_C, A^{-1} P_C)` when defined.
    pub cross_ratio: Option<C>,
    pub cross_ratio_ok: Option<bool>,
}

pub fn decomposability_report(t: &EllipticTriple, cfg: &FixedPointConfig) -> DecomposabilityReport {
    let p = cfg.lambdas[0] * cfg.lambdas[1] * cfg.lambdas[2];
    let cubed = p * p * p;
    let lambda_ok = (cubed - C::new(1.0, 0.0)).norm() <= tol::DECOMPOSABILITY;
    let p_ba = *t.a.inverse().matrix() * cfg.points[2];
    let x = cross_ratio(
        &cfg.points[0],
        &cfg.points[1],
        &cfg.points[2],
        &p_ba,
        t.a.form(),
    )
    .ok();
    let x_ok = x.map(|x| (x - C::new(1.0, 0.0)).norm() <= tol::DECOMPOSABILITY * 10.0);
    DecomposabilityReport {
        lambda_product: p,
        cubed,
        lambda_ok,
        cross_ratio: x,
        cross_ratio_ok: x_ok,
    }
}

/// The eigenvalue criterion `(lambda_A lambda_B lambda_C)^3 = 1`.
pub fn decomposability_test(t: &EllipticTriple, cfg: &FixedPointConfig) -> bool {
    decomposability_report(t, cfg).lambda_ok
}

/// Geometric kind of a decomposition, from the types of the fixed points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompositionKind {
    Spherical,
    Hyperbolic,
    Mixed,
}

pub fn kind_of_types(types: &[PointType; 3]) -> DecompositionKind {
    if types.iter().all(|t| *t == PointType::Negative) {
        DecompositionKind::Spherical
    } else if types.iter().all(|t| *t == PointType::Positive) {
        DecompositionKind::Hyperbolic
    } else {
        DecompositionKind::Mixed
    }
}

/// A constructed decomposition `A = R1 R2^{-1}`, `B = R2 R3^{-1}`,
/// `C = R3 R1^{-1}`.
#[derive(Clone, Copy, Debug)]
pub struct Decomposition {
    pub reflections: [ComplexReflection; 3],
    pub kind: DecompositionKind,
}

impl Decomposition {
    /// Residuals of the three product identities against the triple, after
    /// optimal phase alignment.
    pub fn verify(&self, t: &EllipticTriple) -> [f64; 3] {
        let form = t.a.form();
        let r = [
            self.reflections[0].matrix(form),
            self.reflections[1].matrix(form),
            self.reflections[2].matrix(form),
        ];
        let rinv = [
            self.reflections[0].inverse_matrix(form),
            self.reflections[1].inverse_matrix(form),
            self.reflections[2].inverse_matrix(form),
        ];
        let prods = [r[0] * rinv[1], r[1] * rinv[2], r[2] * rinv[0]];
        let targets = [t.a.matrix(), t.b.matrix(), t.c.matrix()];
        let mut out = [0.0; 3];
        for k in 0..3 {
            let (d, _) = targets[k].projective_dist(&prods[k]);
            out[k] = d / targets[k].frobenius();
        }
        out
    }
}

/// Constructive decomposition for a decomposable configuration
/// (Spherical or Hyperbolic types; Mixed is detected but refused).
pub fn construct_decomposition(
    t: &EllipticTriple,
    cfg: &FixedPointConfig,
) -> Result<Decomposition> {
    let kind = kind_of_types(&cfg.types);
    if kind == DecompositionKind::Mixed {
        return Err(Error::MixedNotSupported);
    }
    let form = t.a.form();
    let p_a = cfg.points[0].normalize_max()?;
    let p_b = cfg.points[1].normalize_max()?;
    let p_c = cfg.points[2].normalize_max()?;
    let p_ba = (*t.a.inverse().matrix() * p_c).normalize_max()?;

    // mirror of R2 is the line (P_A P_B); its isolated fixed point:
    let c2 = polar_of_pair(&p_a, &p_b, form).normalize_max()?;
    let c2c2 = form.inner(&c2, &c2);
    if c2c2.norm() < tol::POINT_TYPE {
        return Err(Error::DegenerateGeometry);
    }

    // split P_C and P_BA into mirror + polar components
    let s = form.inner(&p_c, &c2) / c2c2;
    let s_ba = form.inner(&p_ba, &c2) / c2c2;
    if s.norm() * c2.norm() < 1e-10 * p_c.norm() || s_ba.norm() * c2.norm() < 1e-10 * p_ba.norm() {
        return Err(Error::DegenerateGeometry);
    }
    let x = p_c - c2.scale(s);
    let y = p_ba - c2.scale(s_ba);
    if x.norm() < 1e-10 || y.norm() < 1e-10 {
        return Err(Error::DegenerateGeometry);
    }
    // mirror components must be proportional: y = kappa x
    let kappa = y.hdot(&x) / x.hdot(&x).re;
    if (y - x.scale(kappa)).norm() > 1e-7 * y.norm() {
        return Err(Error::NotDecomposable);
    }
    // rotation factor of R2 from the polar components
    let eta2 = s_ba / (kappa * s);
    if (eta2.norm() - 1.0).abs() > tol::DECOMPOSABILITY {
        return Err(Error::NotDecomposable);
    }
    let eta2 = eta2 / eta2.norm();
    if (eta2 - C::new(1.0, 0.0)).norm() < 1e-10 {
        return Err(Error::DegenerateGeometry);
    }
    let r2 = ComplexReflection::new(c2, eta2, form)?;
    let m2 = r2.matrix(form);
    // the defining property
    if (m2 * p_c).projective_gap(&p_ba) > 1e-7 {
        return Err(Error::NotDecomposable);
    }

    // R1 = A R2 as a map; extract its reflection data on the line (P_A P_C)
    let c1 = polar_of_pair(&p_a, &p_c, form).normalize_max()?;
    let m1 = *t.a.matrix() * m2;
    let zeta1 = cfg.lambdas[0]; // eigenvalue of A R2 on the mirror, = lambda_A
    let eta1 = eigenvalue_at(&m1, &c1) / zeta1;
    if (eta1.norm() - 1.0).abs() > 1e-8 {
        return Err(Error::NotDecomposable);
    }
    let eta1 = eta1 / eta1.norm();
    if (eta1 - C::new(1.0, 0.0)).norm() < 1e-10 {
        return Err(Error::DegenerateGeometry);
    }
    let r1 = ComplexReflection::new(c1, eta1, form)?;

    // R3 = B^{-1} R2; mirror (P_B P_C), fixed scaling conj(lambda_B)
    let c3 = polar_of_pair(&p_b, &p_c, form).normalize_max()?;
    let m3 = *t.b.inverse().matrix() * m2;
    let zeta3 = cfg.lambdas[1].conj();
    let eta3 = eigenvalue_at(&m3, &c3) / zeta3;
    if (eta3.norm() - 1.0).abs() > 1e-8 {
        return Err(Error::NotDecomposable);
    }
    let eta3 = eta3 / eta3.norm();
    if (eta3 - C::new(1.0, 0.0)).norm() < 1e-10 {
        return Err(Error::DegenerateGeometry);
    }
    let r3 = ComplexReflection::new(c3, eta3, form)?;

    let dec = Decomposition {
        reflections: [r1, r2, r3],
        kind,
    };
    let residuals = dec.verify(t);
    if residuals.iter().any(|r| *r > 1e-7) {
        return Err(Error::NotDecomposable);
    }
    Ok(dec)
}

/// Interval of admissible angular invariants at a fixed `theta`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AlphaInterval {
    Empty,
    /// Open arc `(lo, hi)` in `[0, 2 pi]`.
    Arc { lo: f64, hi: f64 },
    Full,
}

impl AlphaInterval {
    pub fn contains(&self, alpha: f64) -> bool {
        match *self {
            AlphaInterval::Empty => false,
            AlphaInterval::Full => true,
            AlphaInterval::Arc { lo, hi } => {
                let a = wrap_2pi(alpha);
                a > lo && a < hi
            }
        }
    }

    pub fn midpoint(&self) -> Option<f64> {
        match *self {
            AlphaInterval::Empty => None,
            AlphaInterval::Full | AlphaInterval::Arc { .. } => Some(std::f64::consts::PI),
        }
    }
}

/// The `(theta, alpha)` chart of a relative component of spherical
/// decomposable triples with prescribed conjugacy classes.
#[derive(Clone, Debug)]
pub struct ComponentChart {
    pub classes: [AnglePair; 3],
    /// Negative-type eigenvalues of the chosen coherent lifts; product 1.
    pub lambdas: [C; 3],
    /// Rotation-angle offsets: `(theta1, theta2, theta3) =
    /// (theta, theta + beta, theta + gamma)`.
    pub beta: f64,
    pub gamma: f64,
    /// Trace targets of the coherent lifts.
    pub trace_targets: [C; 3],
    /// Numerators of the three `sin^2(phi_k)` expressions.
    numerators: [f64; 3],
    /// Maximal open intervals of admissible `theta`.
    pub theta_domain: Vec<(f64, f64)>,
}

/// `2 e^{i d/3} + e^{-2 i d/3}` for a rotation-angle difference `d`: the
/// tangency foot of the trace of a reflection product.
fn tangency_base(d: f64) -> C {
    C::from_polar(2.0, d / 3.0) + C::from_polar(1.0, -2.0 * d / 3.0)
}

impl ComponentChart {
    pub fn thetas(&self, theta: f64) -> [f64; 3] {
        [theta, theta + self.beta, theta + self.gamma]
    }

    /// The three `sin^2(phi_k)` values at `theta` (`phi_1` between the
    /// mirrors of `R2, R3` and cyclically).
    pub fn sin2_phi(&self, theta: f64) -> [f64; 3] {
        let [t1, t2, t3] = self.thetas(theta);
        let g1 = self.numerators[0] / (4.0 * (t2 / 2.0).sin() * (t3 / 2.0).sin());
        let g2 = self.numerators[1] / (4.0 * (t3 / 2.0).sin() * (t1 / 2.0).sin());
        let g3 = self.numerators[2] / (4.0 * (t1 / 2.0).sin() * (t2 / 2.0).sin());
        [g1, g2, g3]
    }

    fn admissible(&self, theta: f64) -> bool {
        self.sin2_phi(theta)
            .iter()
            .all(|g| *g > 1e-12 && *g <= 1.0 + 1e-12)
    }

    /// Mirror-angle cosines at `theta`.
    pub fn r_of_theta(&self, theta: f64) -> [f64; 3] {
        let g = self.sin2_phi(theta);
        [
            (1.0 - g[0]).max(0.0).sqrt(),
            (1.0 - g[1]).max(0.0).sqrt(),
            (1.0 - g[2]).max(0.0).sqrt(),
        ]
    }

    /// The triangle-existence bound at `theta`.
    pub fn delta(&self, theta: f64) -> Option<f64> {
        delta_bound(&self.r_of_theta(theta))
    }

    pub fn alpha_interval(&self, theta: f64) -> AlphaInterval {
        match self.delta(theta) {
            None => {
                // a vanishing r_k makes the bound void; realizability is
                // decided by the Gram signature at construction time
                AlphaInterval::Arc { lo: 0.0, hi: TAU }
            }
            Some(d) if d <= -1.0 => AlphaInterval::Empty,
            Some(d) if d > 1.0 => AlphaInterval::Full,
            Some(d) => {
                let lo = d.acos();
                AlphaInterval::Arc { lo, hi: TAU - lo }
            }
        }
    }

    pub fn contains_theta(&self, theta: f64) -> bool {
        self.theta_domain
            .iter()
            .any(|(lo, hi)| theta > *lo && theta < *hi)
    }

    pub fn is_empty(&self) -> bool {
        self.theta_domain.is_empty()
    }
}

/// Build the chart for three elliptic classes with negative-type fixed
/// points. The lift branches are chosen so that the product of the three
/// negative-type eigenvalues is exactly 1, minimizing the total rotation
/// offset; the existence of such branches is the decomposability condition.
pub fn component_chart(
    class_a: &AnglePair,
    class_b: &AnglePair,
    class_c: &AnglePair,
    want: [PointType; 3],
) -> Result<ComponentChart> {
    if want != [PointType::Negative; 3] {
        return Err(Error::MixedNotSupported);
    }
    let classes = [*class_a, *class_b, *class_c];
    let delta: Vec<C> = classes
        .iter()
        .map(|p| C::from_polar(1.0, -(p.alpha1 + p.alpha2) / 3.0))
        .collect();
    let q = delta[0] * delta[1] * delta[2];
    let q3 = q * q * q;
    if (q3 - C::new(1.0, 0.0)).norm() > tol::DECOMPOSABILITY {
        return Err(Error::NotDecomposableClasses);
    }

    // choose omega-branches with product 1 minimizing the total offsets
    let ws = omegas();
    let mut best: Option<([C; 3], f64)> = None;
    for ka in 0..3 {
        for kb in 0..3 {
            for kc in 0..3 {
                let l = [delta[0] * ws[ka], delta[1] * ws[kb], delta[2] * ws[kc]];
                let prod = l[0] * l[1] * l[2];
                if (prod - C::new(1.0, 0.0)).norm() > 1e-6 {
                    continue;
                }
                let cost = l.iter().map(|z| z.arg().abs()).sum::<f64>();
                if best.is_none_or(|(_, c)| cost < c - 1e-12) {
                    best = Some((l, cost));
                }
            }
        }
    }
    let (lambdas, _) = best.ok_or(Error::NotDecomposableClasses)?;

    let beta = 3.0 * lambdas[0].arg();
    let gamma = -3.0 * lambdas[2].arg();
    let trace_targets: Vec<C> = classes
        .iter()
        .zip(&lambdas)
        .map(|(p, l)| *l * (C::from_polar(1.0, p.alpha1) + C::from_polar(1.0, p.alpha2) + 1.0))
        .collect();

    // theta-independent numerators of the sin^2 formulas
    let n = |d: f64, t: C| -> f64 { ((tangency_base(d) - t) * C::from_polar(1.0, d / 6.0)).re };
    let numerators = [
        n(gamma - beta, trace_targets[1]), // phi_1 from Tr(B)
        n(-gamma, trace_targets[2]),       // phi_2 from Tr(C)
        n(beta, trace_targets[0]),         // phi_3 from Tr(A)
    ];

    let mut chart = ComponentChart {
        classes,
        lambdas,
        beta,
        gamma,
        trace_targets: [trace_targets[0], trace_targets[1], trace_targets[2]],
        numerators,
        theta_domain: Vec::new(),
    };

    // scan and refine the admissible theta set
    const GRID: usize = 4096;
    let mut marks = Vec::with_capacity(GRID + 1);
    for i in 0..=GRID {
        let theta = TAU * i as f64 / GRID as f64;
        marks.push(chart.admissible(theta));
    }
    let refine = |mut lo: f64, mut hi: f64, want_true_side_high: bool| -> f64 {
        // invariant: membership differs between lo and hi
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if chart.admissible(mid) == want_true_side_high {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let step = TAU / GRID as f64;
    let mut intervals = Vec::new();
    let mut start: Option<f64> = None;
    for i in 0..=GRID {
        let theta = step * i as f64;
        match (start, marks[i]) {
            (None, true) => {
                let lo = if i == 0 {
                    0.0
                } else {
                    refine(theta - step, theta, true)
                };
                start = Some(lo);
            }
            (Some(lo), false) => {
                let hi = refine(theta - step, theta, false);
                intervals.push((lo, hi));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(lo) = start {
        intervals.push((lo, TAU));
    }
    chart.theta_domain = intervals;
    Ok(chart)
}

/// A point of the chart realized as matrices: the reflection triangle, the
/// elliptic triple (with `omega = 1`) and its decomposition.
#[derive(Clone, Debug)]
pub struct ChartSample {
    pub theta: f64,
    pub alpha: f64,
    pub triple: EllipticTriple,
    pub decomposition: Decomposition,
    pub reflection_triple: ReflectionTriple,
}

/// Build the representation at `(theta, alpha)`.
pub fn chart_sample(chart: &ComponentChart, theta: f64, alpha: f64) -> Result<ChartSample> {
    if !chart.contains_theta(theta) {
        return Err(Error::OutOfChart);
    }
    if !chart.alpha_interval(theta).contains(alpha) {
        return Err(Error::OutOfChart);
    }
    sample_from_parameters(chart, theta, alpha, false)
}

fn sample_from_parameters(
    chart: &ComponentChart,
    theta: f64,
    alpha: f64,
    lenient: bool,
) -> Result<ChartSample> {
    let r = chart.r_of_theta(theta);
    let [t1, t2, t3] = chart.thetas(theta);
    let etas = [
        C::from_polar(1.0, t1),
        C::from_polar(1.0, t2),
        C::from_polar(1.0, t3),
    ];
    for e in etas {
        if (e - C::new(1.0, 0.0)).norm() < 1e-9 {
            return Err(Error::DegenerateGeometry);
        }
    }
    let rt = if lenient {
        ReflectionTriple::from_cosines_lenient(r, alpha, etas)?
    } else {
        ReflectionTriple::from_cosines(r, alpha, etas)?
    };
    let triple = su_normalized_triple(&rt, chart.beta, chart.gamma)?;
    let refl = rt.reflections()?;
    let decomposition = Decomposition {
        reflections: refl,
        kind: DecompositionKind::Spherical,
    };
    Ok(ChartSample {
        theta,
        alpha,
        triple,
        decomposition,
        reflection_triple: rt,
    })
}

/// SU-normalize the raw reflection products with the branch whose
/// negative-type eigenvalues are `e^{i beta / 3}`-coherent, so the product
/// of the three lifts is exactly the identity.
pub fn su_normalized_triple(
    rt: &ReflectionTriple,
    beta: f64,
    gamma: f64,
) -> Result<EllipticTriple> {
    let prods = rt.products();
    let form = HermitianForm::canonical();
    let a = SU21Element::new(prods[0].scale(C::from_polar(1.0, beta / 3.0)), form)?;
    let b = SU21Element::new(prods[1].scale(C::from_polar(1.0, (gamma - beta) / 3.0)), form)?;
    let c = SU21Element::new(prods[2].scale(C::from_polar(1.0, -gamma / 3.0)), form)?;
    EllipticTriple::new(a, b, c)
}

/// A conjugacy-class-preserving path from a decomposition to the reducible
/// boundary where the mirrors become concurrent (spherical) or acquire a
/// common orthogonal line (hyperbolic).
#[derive(Clone, Debug)]
pub struct DeformationStep {
    pub alpha: f64,
    pub triple: EllipticTriple,
    pub reflection_triple: ReflectionTriple,
}

/// Deform `alpha` to the existence boundary holding the mirror relations
/// and rotation factors fixed (the conjugacy classes stay constant along
/// the path). Returns `steps + 1` samples ending at the boundary.
pub fn deform_to_reducible(
    t: &EllipticTriple,
    dec: &Decomposition,
    steps: usize,
) -> Result<Vec<DeformationStep>> {
    if dec.kind == DecompositionKind::Mixed {
        return Err(Error::MixedNotSupported);
    }
    let form = t.a.form();
    let mut polars = [CVec3::zero(); 3];
    for k in 0..3 {
        let c = dec.reflections[k].polar;
        let norm2 = form.inner(&c, &c);
        if norm2.re <= 0.0 {
            return Err(Error::MixedNotSupported);
        }
        polars[k] = c.scale(C::new(1.0 / norm2.re.sqrt(), 0.0));
    }
    let r = [
        form.inner(&polars[2], &polars[1]).norm(), // r1 = |<c3, c2>|
        form.inner(&polars[0], &polars[2]).norm(), // r2 = |<c1, c3>|
        form.inner(&polars[1], &polars[0]).norm(), // r3 = |<c2, c1>|
    ];
    let alpha0 = crate::reflections::angular_invariant(&polars[0], &polars[1], &polars[2], form)?;
    let delta = delta_bound(&r).ok_or(Error::DegenerateGeometry)?;
    if delta > 1.0 {
        return Err(Error::DegenerateGeometry);
    }
    let cos0 = alpha0.cos();
    if cos0 >= delta {
        return Err(Error::DegenerateGeometry);
    }
    let etas = [
        dec.reflections[0].eta,
        dec.reflections[1].eta,
        dec.reflections[2].eta,
    ];
    let steps = steps.max(1);
    let mut out = Vec::with_capacity(steps + 1);
    for i in 0..=steps {
        let s = i as f64 / steps as f64;
        let c_t = (1.0 - s) * cos0 + s * delta;
        let alpha_t = if alpha0 <= std::f64::consts::PI {
            c_t.clamp(-1.0, 1.0).acos()
        } else {
            TAU - c_t.clamp(-1.0, 1.0).acos()
        };
        let rt = if i == steps {
            ReflectionTriple::from_cosines_lenient(r, alpha_t, etas)?
        } else {
            ReflectionTriple::from_cosines(r, alpha_t, etas)?
        };
        let prods = rt.products();
        let form = HermitianForm::canonical();
        let mut lifted = Vec::with_capacity(3);
        for p in prods {
            let lifts = crate::isometry::su21_lift(&p, &form)?;
            lifted.push(lifts[0]);
        }
        let triple = EllipticTriple::new(lifted[0], lifted[1], lifted[2])?;
        out.push(DeformationStep {
            alpha: alpha_t,
            triple,
            reflection_triple: rt,
        });
    }
    Ok(out)
}

/// Whether the three mirrors of a reflection triple are concurrent
/// (spherical boundary) or share a common orthogonal line (hyperbolic
/// boundary): the pairwise box products become projectively equal. Returns
/// the largest pairwise projective gap.
pub fn mirror_degeneracy_witness(rt: &ReflectionTriple) -> f64 {
    let form = HermitianForm::canonical();
    let p12 = polar_of_pair(&rt.polars[0], &rt.polars[1], &form);
    let p23 = polar_of_pair(&rt.polars[1], &rt.polars[2], &form);
    let p31 = polar_of_pair(&rt.polars[2], &rt.polars[0], &form);
    let g1 = p12.projective_gap(&p23);
    let g2 = p23.projective_gap(&p31);
    let g3 = p31.projective_gap(&p12);
    g1.max(g2).max(g3)
}

/// Pairwise hyperbolic distances between the mirror intersection points; a
/// spherical-boundary witness when they collapse.
pub fn mirror_intersection_spread(rt: &ReflectionTriple) -> Result<f64> {
    let form = HermitianForm::canonical();
    let p12 = polar_of_pair(&rt.polars[0], &rt.polars[1], &form);
    let p23 = polar_of_pair(&rt.polars[1], &rt.polars[2], &form);
    let p31 = polar_of_pair(&rt.polars[2], &rt.polars[0], &form);
    for p in [&p12, &p23, &p31] {
        if point_type(p, &form)? != PointType::Negative {
            return Err(Error::NotInBall);
        }
    }
    let d1 = crate::hermitian::hyperbolic_distance(&p12, &p23, &form)?;
    let d2 = crate::hermitian::hyperbolic_distance(&p23, &p31, &form)?;
    let d3 = crate::hermitian::hyperbolic_distance(&p31, &p12, &form)?;
    Ok(d1.max(d2).max(d3))
}
