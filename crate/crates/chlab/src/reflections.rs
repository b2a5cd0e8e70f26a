//! Complex reflections and normalized triangles of complex lines.
//!
//! A complex reflection is determined by its isolated fixed point `c` (the
//! polar vector of the mirror when the mirror meets the ball) and a rotation
//! factor `eta`, acting as
//!
//! ```text
//! z  |->  z + (eta - 1) (<z,c> / <c,c>) c
//! ```
//!
//! which fixes the orthogonal complement of `c` pointwise and scales `c` by
//! `eta`. Triples of mirrors are normalized by polar vectors `c1, c2, c3`
//! with `<c_{k-1}, c_{k+1}> = r_k e^{i alpha/3}`, giving the Gram matrix
//!
//! ```text
//!       [ 1       r3 u    r2 u^-1 ]
//! H  =  [ r3 u^-1 1       r1 u    ]      u = e^{i alpha / 3}
//!       [ r2 u    r1 u^-1 1       ]
//! ```
//!
//! in the convention `<z,w> = w^* H z`. The matrix lifts of the three
//! reflections in the basis `(c1, c2, c3)` follow from the reflection
//! formula applied to the rows of `H`, which is the variant that actually
//! preserves this `H`.

use crate::complex3::{arg_2pi, wrap_2pi, CMat3, CVec3};
use crate::error::{Error, Result};
use crate::hermitian::{
    gram_vectors, herm_inner, hermitian_eigen, point_type, HermitianForm, PointType,
};
use crate::tol;
use num_complex::Complex64 as C;

/// Mirror kind of a complex reflection, from the type of the isolated fixed
/// point: positive polar vector means the mirror is a complex line of the
/// ball, negative means the reflection fixes a point of the ball.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MirrorKind {
    MirrorLine,
    MirrorPoint,
}

/// A complex reflection: isolated fixed point plus rotation factor.
///
/// The rotation factor is the eigenvalue ratio (isolated fixed point over
/// mirror), as in the reflection formula. The classical point-reflection
/// matrix `S(eta) = diag(eta, eta, 1)` is, projectively, the reflection in
/// `(0,0,1)` with rotation factor `eta^{-1}` in this convention.
#[derive(Clone, Copy, Debug)]
pub struct ComplexReflection {
    pub polar: CVec3,
    pub eta: C,
    pub kind: MirrorKind,
}

impl ComplexReflection {
    pub fn new(polar: CVec3, eta: C, form: &HermitianForm) -> Result<Self> {
        if (eta.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::NotUnitModulus);
        }
        if (eta - C::new(1.0, 0.0)).norm() < 1e-12 {
            return Err(Error::TrivialRotation);
        }
        let kind = match point_type(&polar, form)? {
            PointType::Positive => MirrorKind::MirrorLine,
            PointType::Negative => MirrorKind::MirrorPoint,
            PointType::Null => return Err(Error::NullPolarVector),
        };
        Ok(ComplexReflection { polar, eta, kind })
    }

    /// Matrix of the reflection with respect to `form`.
    pub fn matrix(&self, form: &HermitianForm) -> CMat3 {
        reflection_matrix(&self.polar, self.eta, form)
            .expect("validated polar vector is not null")
    }

    /// Matrix of the inverse reflection (conjugate rotation factor).
    pub fn inverse_matrix(&self, form: &HermitianForm) -> CMat3 {
        reflection_matrix(&self.polar, self.eta.conj(), form)
            .expect("validated polar vector is not null")
    }
}

/// The reflection formula as a matrix:
/// `R = I + ((eta - 1)/<c,c>) c (c^* H)`.
pub fn reflection_matrix(c: &CVec3, eta: C, form: &HermitianForm) -> Result<CMat3> {
    let cc = form.inner(c, c);
    let scale = c.norm();
    if cc.norm() <= tol::POINT_TYPE * scale * scale {
        return Err(Error::NullPolarVector);
    }
    // row vector c^* H  (as a plain vector: conj(c) applied to columns)
    let row = (form.matrix().adjoint() * *c).conj();
    Ok(CMat3::identity() + CMat3::outer(c, &row).scale((eta - C::new(1.0, 0.0)) / cc))
}

/// Relative position of two complex lines given by polar vectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LinePosition {
    /// Lines meet inside the ball at the given complex angle.
    Intersecting(f64),
    /// Lines are disjoint at the given distance.
    Ultraparallel(f64),
    /// Closures meet on the boundary.
    Asymptotic,
}

/// Pairwise relation parameter for constructing triangles: the cosine-like
/// quantity `r = |<c_i, c_j>|` for unit polar vectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MirrorRelation {
    /// Mirrors meet at this angle in `(0, pi/2]`; `r = cos(angle)`.
    Intersecting(f64),
    /// Mirrors at this distance `l > 0`; `r = cosh(l/2)`.
    Ultraparallel(f64),
}

impl MirrorRelation {
    pub fn r(&self) -> Result<f64> {
        match *self {
            MirrorRelation::Intersecting(phi) => {
                if phi <= 0.0 || phi > std::f64::consts::FRAC_PI_2 + 1e-12 {
                    return Err(Error::InvalidRelation);
                }
                Ok(phi.cos().max(0.0))
            }
            MirrorRelation::Ultraparallel(l) => {
                if l <= 0.0 {
                    return Err(Error::InvalidRelation);
                }
                Ok((l / 2.0).cosh())
            }
        }
    }
}

/// Classify the relative position of two complex lines from their polar
/// vectors (both of positive type).
pub fn line_relation(c1: &CVec3, c2: &CVec3, form: &HermitianForm) -> Result<LinePosition> {
    if point_type(c1, form)? != PointType::Positive || point_type(c2, form)? != PointType::Positive
    {
        return Err(Error::NotPolarVectors);
    }
    let n1 = form.inner(c1, c1).re.sqrt();
    let n2 = form.inner(c2, c2).re.sqrt();
    let g = form.inner(c1, c2).norm() / (n1 * n2);
    if (g - 1.0).abs() <= tol::POINT_TYPE {
        Ok(LinePosition::Asymptotic)
    } else if g < 1.0 {
        Ok(LinePosition::Intersecting(g.acos()))
    } else {
        Ok(LinePosition::Ultraparallel(2.0 * g.acosh()))
    }
}

/// The Gram matrix `H` of the normalized triple, exactly in the printed
/// off-diagonal pattern.
pub fn triangle_gram(r1: f64, r2: f64, r3: f64, alpha: f64) -> CMat3 {
    let u = C::from_polar(1.0, alpha / 3.0);
    let ui = u.conj();
    let one = C::new(1.0, 0.0);
    CMat3([
        [one, u * r3, ui * r2],
        [ui * r3, one, u * r1],
        [u * r2, ui * r1, one],
    ])
}

/// The existence bound `delta = (r1^2 + r2^2 + r3^2 - 1) / (2 r1 r2 r3)`,
/// `None` when the product of the `r` vanishes.
pub fn delta_bound(r: &[f64; 3]) -> Option<f64> {
    let prod = r[0] * r[1] * r[2];
    if prod <= 1e-14 {
        None
    } else {
        Some((r[0] * r[0] + r[1] * r[1] + r[2] * r[2] - 1.0) / (2.0 * prod))
    }
}

/// Existence test for a triangle with pairwise angles `phi_k` and angular
/// invariant `alpha`: the strict inequality `cos(alpha) < delta`.
///
/// When some `r_k` vanishes the bound is void (the inequality presumes
/// `r1 r2 r3 != 0`); existence is then decided downstream by the Gram
/// signature, and this predicate returns `true`.
pub fn triangle_exists(phi1: f64, phi2: f64, phi3: f64, alpha: f64) -> bool {
    let r = [phi1.cos(), phi2.cos(), phi3.cos()];
    match delta_bound(&r) {
        // guard band so that equality (coincident vertices) reads false
        Some(delta) => alpha.cos() < delta - 1e-13,
        None => true,
    }
}

/// The classifying data of a normalized triple of complex lines.
#[derive(Clone, Copy, Debug)]
pub struct TriangleData {
    pub r: [f64; 3],
    pub alpha: f64,
    pub u: C,
    pub gram: CMat3,
    /// Diagonal normalization signs of the polar vectors; `-1.0` marks a
    /// polar vector of negative type (mirror is a point of the ball, only
    /// used for orthogonal degenerate configurations).
    pub diag_signs: [f64; 3],
}

/// Three complex reflections in normalized position.
#[derive(Clone, Debug)]
pub struct ReflectionTriple {
    pub data: TriangleData,
    pub etas: [C; 3],
    /// Lifts in the basis `(c1, c2, c3)` (reflection formula applied to the
    /// Gram rows).
    pub lifts: [CMat3; 3],
    /// Polar vectors realized in the canonical `diag(1,1,-1)` frame.
    pub polars: [CVec3; 3],
    /// Basis change: columns are the `polars`; maps basis coordinates to
    /// canonical-frame vectors.
    pub to_canonical: CMat3,
}

impl ReflectionTriple {
    /// Construct from pairwise relations, angular invariant and rotation
    /// factors.
    pub fn from_relations(
        relations: &[MirrorRelation; 3],
        alpha: f64,
        etas: [C; 3],
    ) -> Result<Self> {
        let r = [relations[0].r()?, relations[1].r()?, relations[2].r()?];
        Self::from_cosines(r, alpha, etas)
    }

    /// Construct from the `r_k` parameters directly. Strict: the Gram
    /// matrix must have signature (2,1), possibly after flipping a
    /// diagonal normalization in the orthogonal degenerate case.
    pub fn from_cosines(r: [f64; 3], alpha: f64, etas: [C; 3]) -> Result<Self> {
        Self::build(r, alpha, etas, false)
    }

    /// Like `from_cosines` but tolerating a vanishing third Gram eigenvalue.
    /// Used for deformation endpoints where the mirrors become concurrent
    /// or acquire a common orthogonal line.
    pub fn from_cosines_lenient(r: [f64; 3], alpha: f64, etas: [C; 3]) -> Result<Self> {
        Self::build(r, alpha, etas, true)
    }

    fn build(r: [f64; 3], alpha: f64, etas: [C; 3], lenient: bool) -> Result<Self> {
        for (k, rk) in r.iter().enumerate() {
            if !rk.is_finite() || *rk < 0.0 {
                return Err(Error::InvalidRelation);
            }
            if (etas[k].norm() - 1.0).abs() > 1e-10 {
                return Err(Error::NotUnitModulus);
            }
            if (etas[k] - C::new(1.0, 0.0)).norm() < 1e-12 {
                return Err(Error::TrivialRotation);
            }
        }
        let alpha = wrap_2pi(alpha);
        let base = triangle_gram(r[0], r[1], r[2], alpha);

        let mut candidates: Vec<[f64; 3]> = vec![[1.0, 1.0, 1.0]];
        if r[0] * r[1] * r[2] <= 1e-14 {
            // orthogonal degenerate configurations admit a point-mirror
            // normalization; prefer flipping the third slot
            candidates.push([1.0, 1.0, -1.0]);
            candidates.push([1.0, -1.0, 1.0]);
            candidates.push([-1.0, 1.0, 1.0]);
        }

        let mut chosen: Option<([f64; 3], CMat3)> = None;
        let mut all_lines_failed_bound = false;
        for signs in candidates {
            let mut h = base;
            for k in 0..3 {
                h.0[k][k] = C::new(signs[k], 0.0);
            }
            let (vals, _) = hermitian_eigen(&h);
            let scale = vals.iter().map(|v| v.abs()).fold(1.0, f64::max);
            let ok = if lenient {
                // allow one vanishing eigenvalue on either boundary
                vals[0] > 1e-10 * scale
                    && vals[1] > -1e-8 * scale
                    && vals[2] < 1e-8 * scale
                    && (vals[1] > 1e-8 * scale || vals[2] < -1e-8 * scale)
            } else {
                vals[0] > 1e-10 * scale && vals[1] > 1e-10 * scale && vals[2] < -1e-12 * scale
            };
            if ok {
                chosen = Some((signs, h));
                break;
            }
            if signs == [1.0, 1.0, 1.0] && r.iter().all(|x| *x < 1.0) {
                all_lines_failed_bound = true;
            }
        }
        let (signs, h) = match chosen {
            Some(c) => c,
            None => {
                return Err(if all_lines_failed_bound {
                    Error::NonRealizable
                } else {
                    Error::SignatureError
                })
            }
        };

        let polars = gram_vectors(&h)?;
        let u = C::from_polar(1.0, alpha / 3.0);
        let data = TriangleData {
            r,
            alpha,
            u,
            gram: h,
            diag_signs: signs,
        };

        // lifts in the c-basis: reflection formula on the rows of H
        let mut lifts = [CMat3::zero(); 3];
        for k in 0..3 {
            let mut m = CMat3::identity();
            let f = (etas[k] - C::new(1.0, 0.0)) / h.0[k][k];
            for j in 0..3 {
                m.0[k][j] += f * h.0[k][j];
            }
            lifts[k] = m;
        }

        Ok(ReflectionTriple {
            data,
            etas,
            lifts,
            polars,
            to_canonical: CMat3::from_cols(polars[0], polars[1], polars[2]),
        })
    }

    /// The reflection matrices realized in the canonical frame.
    pub fn canonical_reflections(&self) -> [CMat3; 3] {
        let j = HermitianForm::canonical();
        let mut out = [CMat3::zero(); 3];
        for k in 0..3 {
            out[k] = reflection_matrix(&self.polars[k], self.etas[k], &j)
                .expect("normalized polar vectors are never null");
        }
        out
    }

    /// Raw products `(R1 R2^{-1}, R2 R3^{-1}, R3 R1^{-1})` in the canonical
    /// frame (determinants `eta_i / eta_j`, not yet unit).
    pub fn products(&self) -> [CMat3; 3] {
        let j = HermitianForm::canonical();
        let refl = self.canonical_reflections();
        let mut inv = [CMat3::zero(); 3];
        for k in 0..3 {
            inv[k] = reflection_matrix(&self.polars[k], self.etas[k].conj(), &j)
                .expect("normalized polar vectors are never null");
        }
        [refl[0] * inv[1], refl[1] * inv[2], refl[2] * inv[0]]
    }

    /// The reflections as data objects.
    pub fn reflections(&self) -> Result<[ComplexReflection; 3]> {
        let j = HermitianForm::canonical();
        Ok([
            ComplexReflection::new(self.polars[0], self.etas[0], &j)?,
            ComplexReflection::new(self.polars[1], self.etas[1], &j)?,
            ComplexReflection::new(self.polars[2], self.etas[2], &j)?,
        ])
    }
}

/// Angular invariant of a triple of polar vectors:
/// `alpha = arg( <c3,c2> <c1,c3> <c2,c1> )`, in `[0, 2 pi)`.
pub fn angular_invariant(
    c1: &CVec3,
    c2: &CVec3,
    c3: &CVec3,
    form: &HermitianForm,
) -> Result<f64> {
    let p1 = herm_inner(c3, c2, form);
    let p2 = herm_inner(c1, c3, form);
    let p3 = herm_inner(c2, c1, form);
    let n1 = c1.norm() * c3.norm();
    let n2 = c2.norm() * c3.norm();
    let n3 = c1.norm() * c2.norm();
    if p1.norm() <= tol::POINT_TYPE * n2 || p2.norm() <= tol::POINT_TYPE * n1
        || p3.norm() <= tol::POINT_TYPE * n3
    {
        return Err(Error::DegenerateTriple);
    }
    Ok(arg_2pi(p1 * p2 * p3))
}
