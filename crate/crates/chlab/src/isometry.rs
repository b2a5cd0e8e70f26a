//! SU(2,1) lifts, isometry classification, angle pairs and trace
//! coordinates.
//!
//! Classification runs on the trace discriminant: the deltoid curve
//! `{2 e^{i t} + e^{-2 i t}}` separates regular elliptic traces (inside)
//! from loxodromic ones (outside); traces on the curve belong to special
//! elliptic or parabolic elements and are disambiguated by the eigensystem.

use crate::complex3::{angle_dist, arg_2pi, wrap_2pi, CMat3};
use crate::error::{Error, Result};
use crate::hermitian::{eigen_system, EigenSystem, HermitianForm, PointType};
use crate::tol;
use num_complex::Complex64 as C;
use std::f64::consts::TAU;

/// Primitive cube root of unity `e^{2 i pi / 3}`.
pub fn omega() -> C {
    C::from_polar(1.0, TAU / 3.0)
}

/// The three cube roots of unity.
pub fn omegas() -> [C; 3] {
    [C::new(1.0, 0.0), omega(), omega() * omega()]
}

/// Distance to the nearest `omega^k`-multiple: `min_k |a - w^k b|`.
pub fn omega_dist(a: C, b: C) -> f64 {
    omegas()
        .iter()
        .map(|w| (a - *w * b).norm())
        .fold(f64::INFINITY, f64::min)
}

/// A unit-determinant matrix certified to preserve a signature-(2,1) form.
#[derive(Clone, Copy, Debug)]
pub struct SU21Element {
    matrix: CMat3,
    form: HermitianForm,
    trace: C,
}

impl SU21Element {
    pub fn new(matrix: CMat3, form: HermitianForm) -> Result<Self> {
        if !matrix.is_finite() {
            return Err(Error::NonFinite);
        }
        if (matrix.det() - C::new(1.0, 0.0)).norm() > tol::SU_LIFT {
            return Err(Error::NotUnimodular);
        }
        let h = *form.matrix();
        if (matrix.adjoint() * h * matrix).dist(&h) > tol::SU_LIFT * h.max_abs() * 10.0 {
            return Err(Error::NotFormPreserving);
        }
        Ok(SU21Element {
            matrix,
            form,
            trace: matrix.trace(),
        })
    }

    pub fn identity(form: HermitianForm) -> Self {
        SU21Element {
            matrix: CMat3::identity(),
            form,
            trace: C::new(3.0, 0.0),
        }
    }

    pub fn matrix(&self) -> &CMat3 {
        &self.matrix
    }

    pub fn form(&self) -> &HermitianForm {
        &self.form
    }

    pub fn trace(&self) -> C {
        self.trace
    }

    pub fn compose(&self, other: &Self) -> Self {
        let m = self.matrix * other.matrix;
        SU21Element {
            matrix: m,
            form: self.form,
            trace: m.trace(),
        }
    }

    /// Inverse from the form: `M^{-1} = H^{-1} M^* H`.
    pub fn inverse(&self) -> Self {
        let m = *self.form.inverse() * self.matrix.adjoint() * *self.form.matrix();
        SU21Element {
            matrix: m,
            form: self.form,
            trace: m.trace(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let m = self.matrix.pow(n);
        SU21Element {
            matrix: m,
            form: self.form,
            trace: m.trace(),
        }
    }

    /// Conjugate by another element of the same group: `P M P^{-1}`.
    pub fn conjugate_by(&self, p: &Self) -> Self {
        let m = p.matrix * self.matrix * p.inverse().matrix;
        SU21Element {
            matrix: m,
            form: self.form,
            trace: self.trace,
        }
    }

    /// Multiply by a cube root of unity (stays in SU(2,1)).
    pub fn scale_omega(&self, k: usize) -> Self {
        let m = self.matrix.scale(omegas()[k % 3]);
        SU21Element {
            matrix: m,
            form: self.form,
            trace: m.trace(),
        }
    }

    pub fn eigen(&self) -> Result<EigenSystem> {
        eigen_system(&self.matrix, &self.form)
    }

    pub fn classify(&self) -> IsometryClass {
        classify(self)
    }
}

/// The conjugation-invariant class of an isometry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsometryClass {
    Loxodromic,
    Parabolic,
    RegularElliptic,
    SpecialEllipticLine,
    SpecialEllipticPoint,
    Identity,
}

impl IsometryClass {
    pub fn is_elliptic(&self) -> bool {
        matches!(
            self,
            IsometryClass::RegularElliptic
                | IsometryClass::SpecialEllipticLine
                | IsometryClass::SpecialEllipticPoint
                | IsometryClass::Identity
        )
    }

    pub fn name(&self) -> &'static str {
        match self {
            IsometryClass::Loxodromic => "Loxodromic",
            IsometryClass::Parabolic => "Parabolic",
            IsometryClass::RegularElliptic => "RegularElliptic",
            IsometryClass::SpecialEllipticLine => "SpecialEllipticLine",
            IsometryClass::SpecialEllipticPoint => "SpecialEllipticPoint",
            IsometryClass::Identity => "Identity",
        }
    }
}

/// Unordered rotation-angle pair of an elliptic conjugacy class, stored as
/// `0 <= alpha2 <= alpha1 < 2 pi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnglePair {
    pub alpha1: f64,
    pub alpha2: f64,
}

impl AnglePair {
    pub fn new(a: f64, b: f64) -> Self {
        let x = wrap_2pi(a);
        let y = wrap_2pi(b);
        AnglePair {
            alpha1: x.max(y),
            alpha2: x.min(y),
        }
    }

    /// Regular elliptic classes have `0 < alpha2 < alpha1 < 2 pi`.
    pub fn is_regular(&self) -> bool {
        self.alpha2 > tol::ANGLE && (self.alpha1 - self.alpha2) > tol::ANGLE
    }

    /// Class of the inverse element.
    pub fn inverse_class(&self) -> Self {
        AnglePair::new(TAU - self.alpha1, TAU - self.alpha2)
    }

    /// Wrap-aware comparison of unordered pairs.
    pub fn approx_eq(&self, other: &Self, atol: f64) -> bool {
        let direct = angle_dist(self.alpha1, other.alpha1).max(angle_dist(self.alpha2, other.alpha2));
        let crossed =
            angle_dist(self.alpha1, other.alpha2).max(angle_dist(self.alpha2, other.alpha1));
        direct.min(crossed) <= atol
    }
}

/// Resultant-based trace discriminant: negative strictly inside the deltoid,
/// zero on it, positive outside.
pub fn goldman_discriminant(tau: C) -> f64 {
    let n2 = tau.norm_sqr();
    n2 * n2 - 8.0 * (tau * tau * tau).re + 18.0 * n2 - 27.0
}

/// Classify an SU(2,1) element. Total function.
pub fn classify(m: &SU21Element) -> IsometryClass {
    let f = goldman_discriminant(m.trace());
    if f < -tol::DELTOID {
        return IsometryClass::RegularElliptic;
    }
    if f > tol::DELTOID {
        return IsometryClass::Loxodromic;
    }
    // On the curve: identity, special elliptic, or parabolic.
    let mnorm = m.matrix().frobenius();
    for w in omegas() {
        if m.matrix().dist(&CMat3::identity().scale(w)) <= 1e-8 * mnorm.max(1.0) {
            return IsometryClass::Identity;
        }
    }
    let es = match m.eigen() {
        Ok(es) => es,
        Err(_) => return IsometryClass::Parabolic,
    };
    let v = es.values();
    // locate the closest pair: the repeated eigenvalue
    let pairs = [(0usize, 1usize, 2usize), (0, 2, 1), (1, 2, 0)];
    let (i, j, k) = *pairs
        .iter()
        .min_by(|a, b| {
            let da = (v[a.0] - v[a.1]).norm();
            let db = (v[b.0] - v[b.1]).norm();
            da.partial_cmp(&db).unwrap()
        })
        .unwrap();
    let gap = (v[i] - v[j]).norm();
    let scale = v.iter().map(|x| x.norm()).fold(1.0, f64::max);
    if gap < 1e-5 * scale {
        // special elliptic: the isolated eigenvector decides line vs point
        return match es.entries[k].point_type {
            PointType::Positive => IsometryClass::SpecialEllipticLine,
            PointType::Negative => IsometryClass::SpecialEllipticPoint,
            PointType::Null => IsometryClass::Parabolic,
        };
    }
    // numerically on the curve but with three separated eigenvalues: decide
    // by eigenvalue moduli
    if v.iter().any(|x| (x.norm() - 1.0).abs() > 1e-6) {
        IsometryClass::Loxodromic
    } else {
        IsometryClass::RegularElliptic
    }
}

/// Eigenvalue whose eigenvector is of negative type.
pub fn negative_type_eigenvalue(m: &SU21Element) -> Result<C> {
    if !classify(m).is_elliptic() {
        return Err(Error::NotElliptic);
    }
    let es = m.eigen()?;
    es.negative_entry()
        .map(|e| e.value)
        .ok_or(Error::NotElliptic)
}

/// Angle pair of an elliptic element: rescale the lift so the negative-type
/// eigenvalue is 1 and read off the arguments of the other two eigenvalues.
pub fn angle_pair(m: &SU21Element) -> Result<AnglePair> {
    if !classify(m).is_elliptic() {
        return Err(Error::NotElliptic);
    }
    let es = m.eigen()?;
    let neg = es.negative_entry().ok_or(Error::NotElliptic)?;
    let others: Vec<C> = es
        .entries
        .iter()
        .filter(|e| e.point_type != PointType::Negative)
        .map(|e| e.value)
        .collect();
    if others.len() != 2 {
        return Err(Error::NotElliptic);
    }
    Ok(AnglePair::new(
        arg_2pi(others[0] / neg.value),
        arg_2pi(others[1] / neg.value),
    ))
}

/// Unit-determinant lift of `E(alpha1, alpha2) = diag(e^{i a1}, e^{i a2}, 1)`
/// with the principal cube-root branch for the normalizer.
pub fn elliptic_from_angle_pair(p: &AnglePair) -> SU21Element {
    let e = CMat3::diag(
        C::from_polar(1.0, p.alpha1),
        C::from_polar(1.0, p.alpha2),
        C::new(1.0, 0.0),
    );
    let delta = principal_cbrt(e.det()).finv();
    SU21Element::new(e.scale(delta), HermitianForm::canonical())
        .expect("diagonal E-lift is always in SU(2,1)")
}

/// Principal cube root `e^{log(z)/3}` with the branch cut on the negative
/// real axis.
pub fn principal_cbrt(z: C) -> C {
    C::from_polar(z.norm().cbrt(), z.arg() / 3.0)
}

/// The three unit-determinant rescalings of a projectively form-preserving
/// matrix.
pub fn su21_lift(m: &CMat3, form: &HermitianForm) -> Result<[SU21Element; 3]> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let d = m.det();
    if d.norm() < 1e-14 {
        return Err(Error::NotFormPreserving);
    }
    // projective form preservation: M^* H M = mu H with mu real positive
    let h = *form.matrix();
    let p = m.adjoint() * h * *m;
    // read mu from the largest entry of H
    let (mut bi, mut bj) = (0usize, 0usize);
    for i in 0..3 {
        for j in 0..3 {
            if h.0[i][j].norm() > h.0[bi][bj].norm() {
                bi = i;
                bj = j;
            }
        }
    }
    let mu = p.0[bi][bj] / h.0[bi][bj];
    if mu.im.abs() > 1e-8 * mu.norm().max(1.0) || mu.re <= 0.0 {
        return Err(Error::NotFormPreserving);
    }
    if p.dist(&h.scale(C::new(mu.re, 0.0))) > 1e-8 * p.frobenius().max(1.0) {
        return Err(Error::NotFormPreserving);
    }
    let s = principal_cbrt(d);
    let mut lifts = Vec::with_capacity(3);
    for w in omegas() {
        let lift = m.scale((s * w).finv());
        lifts.push(SU21Element::new(lift, *form)?);
    }
    Ok([lifts[0], lifts[1], lifts[2]])
}

/// The five trace coordinates of a representation of the free group of rank
/// two determined by `(A, B)`.
#[derive(Clone, Copy, Debug)]
pub struct CharacterPoint {
    pub tr_a: C,
    pub tr_b: C,
    pub tr_ab: C,
    pub tr_ainv_b: C,
    pub tr_comm: C,
}

impl CharacterPoint {
    /// Comparison up to multiplying each representation by cube roots of
    /// unity, which rescales `tr_a`, `tr_b` by `omega^k` and the words
    /// accordingly.
    pub fn approx_eq_mod_omega(&self, other: &Self, atol: f64) -> bool {
        omega_dist(self.tr_a, other.tr_a) <= atol
            && omega_dist(self.tr_b, other.tr_b) <= atol
            && omega_dist(self.tr_ab, other.tr_ab) <= atol
            && omega_dist(self.tr_ainv_b, other.tr_ainv_b) <= atol
            && (self.tr_comm - other.tr_comm).norm() <= atol
    }
}

/// All five traces by direct matrix products.
pub fn character_point(a: &SU21Element, b: &SU21Element) -> CharacterPoint {
    let ainv = a.inverse();
    let binv = b.inverse();
    let comm = a.compose(b).compose(&ainv).compose(&binv);
    CharacterPoint {
        tr_a: a.trace(),
        tr_b: b.trace(),
        tr_ab: a.compose(b).trace(),
        tr_ainv_b: ainv.compose(b).trace(),
        tr_comm: comm.trace(),
    }
}
