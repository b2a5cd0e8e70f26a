//! The deltoid, its tangent lines, and the trace formulas for products of
//! two complex reflections.
//!
//! The curve `Delta = { 2 e^{i t} + e^{-2 i t} }` bounds the region of
//! regular elliptic traces in SU(2,1). The tangent line at parameter `t` is
//! `{ e^{i t} + s e^{-i t / 2}, s real }`, and a point `z` lies on the
//! tangent at `t` exactly when `e^{i t}` is a root of
//! `v^3 - z v^2 + conj(z) v - 1`, the characteristic polynomial of an
//! SU(2,1) element with trace `z`. Tangent feet are therefore eigenvalue
//! choices, and picking a conjugacy class for a trace amounts to picking
//! one of the three tangents.

use crate::complex3::{arg_2pi, wrap_2pi};
use crate::cubic::cubic_roots;
use crate::error::{Error, Result};
use crate::isometry::goldman_discriminant;
use crate::reflections::MirrorRelation;
use crate::tol;
use num_complex::Complex64 as C;

/// Point of the deltoid at parameter `theta`.
pub fn deltoid_point(theta: f64) -> C {
    C::from_polar(2.0, theta) + C::from_polar(1.0, -2.0 * theta)
}

/// A tangent line of the deltoid: `{ foot + s * direction, s real }`,
/// equivalently `{ e^{i foot_theta} + s' * direction }`.
#[derive(Clone, Copy, Debug)]
pub struct TangentLine {
    pub foot_theta: f64,
    pub foot: C,
    pub direction: C,
}

impl TangentLine {
    pub fn at(theta: f64) -> Self {
        let theta = wrap_2pi(theta);
        TangentLine {
            foot_theta: theta,
            foot: deltoid_point(theta),
            direction: C::from_polar(1.0, -theta / 2.0),
        }
    }

    /// Signed real coordinate of `z` along the tangent direction, measured
    /// from the foot, together with the off-line residual.
    pub fn coordinate_of(&self, z: C) -> (f64, f64) {
        let w = (z - self.foot) / self.direction;
        (w.re, w.im.abs())
    }

    /// Distance from `z` to the line.
    pub fn residual(&self, z: C) -> f64 {
        self.coordinate_of(z).1
    }
}

/// The three tangent lines of the deltoid through a point strictly inside
/// it. The tangency parameters are the arguments of the roots of
/// `v^3 - z v^2 + conj(z) v - 1`; they sum to zero mod 2 pi.
pub fn tangents_through(z: C) -> Result<[TangentLine; 3]> {
    if goldman_discriminant(z) >= -tol::DELTOID {
        return Err(Error::NotInsideDeltoid);
    }
    let roots = cubic_roots(-z, z.conj(), C::new(-1.0, 0.0));
    let mut params: Vec<f64> = roots
        .iter()
        .map(|r| arg_2pi(*r / r.norm())) // project to the unit circle
        .collect();
    params.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok([
        TangentLine::at(params[0]),
        TangentLine::at(params[1]),
        TangentLine::at(params[2]),
    ])
}

/// Trace of a product `R1 R2^{-1}` of complex reflections with rotation
/// factors `e^{i theta1}, e^{i theta2}`, normalized to the SU(2,1) branch
/// with negative-type eigenvalue `e^{i (theta2 - theta1)/3}`:
///
/// intersecting mirrors at angle `phi`:
/// `T0 - 4 sin^2(phi) sin(t1/2) sin(t2/2) e^{-i(t2-t1)/6}`;
/// disjoint mirrors at distance `l`:
/// `T0 + 4 sinh^2(l/2) sin(t1/2) sin(t2/2) e^{-i(t2-t1)/6}`,
///
/// with `T0 = 2 e^{i(t2-t1)/3} + e^{-2i(t2-t1)/3}` the tangency foot.
pub fn trace_product(theta1: f64, theta2: f64, relation: MirrorRelation) -> Result<C> {
    if theta1.sin().abs() < 1e-15 && (1.0 - theta1.cos()).abs() < 1e-15 {
        return Err(Error::TrivialRotation);
    }
    if theta2.sin().abs() < 1e-15 && (1.0 - theta2.cos()).abs() < 1e-15 {
        return Err(Error::TrivialRotation);
    }
    let coeff = match relation {
        MirrorRelation::Intersecting(phi) => {
            if phi <= 0.0 || phi > std::f64::consts::FRAC_PI_2 + 1e-12 {
                return Err(Error::InvalidRelation);
            }
            -4.0 * phi.sin() * phi.sin()
        }
        MirrorRelation::Ultraparallel(l) => {
            if l <= 0.0 {
                return Err(Error::InvalidRelation);
            }
            let s = (l / 2.0).sinh();
            4.0 * s * s
        }
    };
    let d = (theta2 - theta1) / 3.0;
    let t0 = C::from_polar(2.0, d) + C::from_polar(1.0, -2.0 * d);
    let t = coeff * (theta1 / 2.0).sin() * (theta2 / 2.0).sin();
    Ok(t0 + C::from_polar(1.0, -d / 2.0) * t)
}

/// Foot of the tangent line carrying the trace of a regular elliptic
/// element with negative-type eigenvalue `lambda`: `2 lambda + lambda^{-2}`.
pub fn tangent_foot(lambda_minus: C) -> Result<C> {
    if (lambda_minus.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::NotUnitModulus);
    }
    Ok(lambda_minus * 2.0 + (lambda_minus * lambda_minus).finv())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex3::angle_dist;
    use std::f64::consts::TAU;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn deltoid_values() {
        assert!((deltoid_point(0.0) - C::new(3.0, 0.0)).norm() < 1e-15);
        let w = C::from_polar(3.0, TAU / 3.0);
        assert!((deltoid_point(TAU / 3.0) - w).norm() < 1e-14);
        assert!((deltoid_point(PI) - C::new(-1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn deltoid_is_on_discriminant_zero_set() {
        for i in 0..1024 {
            let t = TAU * i as f64 / 1024.0;
            assert!(goldman_discriminant(deltoid_point(t)).abs() < 1e-9);
        }
    }

    #[test]
    fn tangents_through_origin() {
        // the origin is the trace of the order-3 rotation class; its
        // tangency parameters are the cube roots of unity
        let ts = tangents_through(C::new(0.0, 0.0)).unwrap();
        let sum: f64 = ts.iter().map(|t| t.foot_theta).sum();
        assert!(angle_dist(sum, 0.0) < 1e-9);
        for t in &ts {
            assert!(t.residual(C::new(0.0, 0.0)) < 1e-9);
        }
        // the lambda = 1 branch has its foot at the cusp 3
        let at_zero = ts
            .iter()
            .map(|t| angle_dist(t.foot_theta, 0.0))
            .fold(f64::INFINITY, f64::min);
        assert!(at_zero < 1e-9);
        assert!(ts
            .iter()
            .any(|t| (t.foot - C::new(3.0, 0.0)).norm() < 1e-9));
    }

    #[test]
    fn tangents_through_on_line_point() {
        // a point constructed on a known tangent line recovers its parameter
        let theta0 = 1.234;
        let z = C::from_polar(1.0, theta0) + C::from_polar(0.3, -theta0 / 2.0);
        assert!(goldman_discriminant(z) < 0.0);
        let ts = tangents_through(z).unwrap();
        let found = ts
            .iter()
            .map(|t| angle_dist(t.foot_theta, theta0))
            .fold(f64::INFINITY, f64::min);
        assert!(found < 1e-9);
    }

    #[test]
    fn tangents_outside_rejected() {
        assert!(matches!(
            tangents_through(C::new(4.0, 0.0)),
            Err(Error::NotInsideDeltoid)
        ));
    }

    #[test]
    fn trace_product_orthogonal_involutions() {
        // two involutions with orthogonal mirrors: product has trace -1
        let t = trace_product(PI, PI, MirrorRelation::Intersecting(FRAC_PI_2)).unwrap();
        assert!((t - C::new(-1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn trace_product_equal_angles_first_term() {
        // theta2 = theta1 makes the tangency foot 3
        let t = trace_product(1.3, 1.3, MirrorRelation::Intersecting(0.6)).unwrap();
        let correction = t - C::new(3.0, 0.0);
        assert!(correction.im.abs() < 1e-14);
        assert!(correction.re < 0.0);
    }

    #[test]
    fn foot_values() {
        assert!((tangent_foot(C::new(1.0, 0.0)).unwrap() - C::new(3.0, 0.0)).norm() < 1e-15);
        let w = C::from_polar(1.0, TAU / 3.0);
        assert!((tangent_foot(w).unwrap() - C::from_polar(3.0, TAU / 3.0)).norm() < 1e-13);
        assert!(tangent_foot(C::new(1.4, 0.0)).is_err());
    }

    #[test]
    fn trace_sits_on_tangent_at_difference_parameter() {
        let (t1, t2, phi) = (0.9, 2.6, 0.7);
        let z = trace_product(t1, t2, MirrorRelation::Intersecting(phi)).unwrap();
        let line = TangentLine::at((t2 - t1) / 3.0);
        assert!(line.residual(z) < 1e-12);
    }

    #[test]
    fn half_line_signs() {
        // intersecting values on the non-positive side, ultraparallel on the
        // non-negative side of the tangent direction
        let (t1, t2) = (1.1, 2.0);
        let line = TangentLine::at((t2 - t1) / 3.0);
        let zi = trace_product(t1, t2, MirrorRelation::Intersecting(0.8)).unwrap();
        let zu = trace_product(t1, t2, MirrorRelation::Ultraparallel(0.9)).unwrap();
        let (si, ri) = line.coordinate_of(zi);
        let (su, ru) = line.coordinate_of(zu);
        assert!(ri < 1e-12 && ru < 1e-12);
        assert!(si <= 0.0 && su >= 0.0);
    }
}
