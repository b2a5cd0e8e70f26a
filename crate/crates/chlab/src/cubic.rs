//! Closed-form roots of cubic polynomials with complex coefficients.
//!
//! Cardano's method followed by a couple of Newton steps on the original
//! polynomial. Exact degree for the 3x3 characteristic polynomials used
//! throughout the crate, no iterative eigen library involved.

use num_complex::Complex64 as C;

/// Roots of `a x^2 + b x + c` with the cancellation-safe branch choice.
pub fn quadratic_roots(a: C, b: C, c: C) -> [C; 2] {
    let disc = (b * b - a * c * 4.0).sqrt();
    // pick the sign that avoids cancellation in -b -+ disc
    let q = if (b + disc).norm() >= (b - disc).norm() {
        -(b + disc) * 0.5
    } else {
        -(b - disc) * 0.5
    };
    if q.norm() > 1e-300 {
        [q / a, c / q]
    } else {
        [C::new(0.0, 0.0), -b / a]
    }
}

/// Roots of `x^3 + a2 x^2 + a1 x + a0`.
pub fn cubic_roots(a2: C, a1: C, a0: C) -> [C; 3] {
    let third = 1.0 / 3.0;
    let shift = a2 * third;
    // depressed cubic t^3 + p t + q, x = t - a2/3
    let p = a1 - a2 * a2 * third;
    let q = a0 - a2 * a1 * third + a2 * a2 * a2 * (2.0 / 27.0);

    let scale = p.norm().sqrt().max(q.norm().cbrt());
    let mut roots = if scale == 0.0 {
        [-shift; 3]
    } else {
        let half_q = q * 0.5;
        let disc = (half_q * half_q + p * p * p / 27.0).sqrt();
        // pick the branch with the larger |u^3| for stability
        let u3 = if (-half_q + disc).norm() >= (-half_q - disc).norm() {
            -half_q + disc
        } else {
            -half_q - disc
        };
        let u = u3.powf(third);
        let omega = C::new(-0.5, 0.75f64.sqrt());
        let mut out = [C::new(0.0, 0.0); 3];
        for (k, r) in out.iter_mut().enumerate() {
            let uk = u * omega.powu(k as u32);
            let t = if uk.norm() > 1e-300 {
                uk - p / (uk * 3.0)
            } else {
                uk
            };
            *r = t - shift;
        }
        out
    };

    // Newton polish on the original cubic
    for r in roots.iter_mut() {
        for _ in 0..2 {
            let x = *r;
            let f = ((x + a2) * x + a1) * x + a0;
            let df = (x * 3.0 + a2 * 2.0) * x + a1;
            if df.norm() > 1e-300 {
                let step = f / df;
                if step.norm().is_finite() {
                    *r = x - step;
                }
            }
        }
    }
    roots
}
