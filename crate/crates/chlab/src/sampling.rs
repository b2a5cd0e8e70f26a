//! Deterministic samplers for randomized checks.
//!
//! A small splitmix generator keeps the test corpus reproducible without an
//! external RNG dependency; the seed can be overridden through the
//! `CHLAB_SEED` environment variable.

use crate::complex3::CMat3;
use crate::hermitian::HermitianForm;
use crate::isometry::{elliptic_from_angle_pair, su21_lift, AnglePair, SU21Element};
use crate::reflections::{delta_bound, ReflectionTriple};
use num_complex::Complex64 as C;
use std::f64::consts::TAU;

/// Splitmix64.
#[derive(Clone, Debug)]
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    /// Seed from `CHLAB_SEED` when set, otherwise a fixed default.
    pub fn from_env() -> Self {
        let seed = std::env::var("CHLAB_SEED")
            .ok()
            .and_then(|s| s.parse::<u64>().ok())
            .unwrap_or(0xC0FFEE);
        Rng::new(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    pub fn angle(&mut self) -> f64 {
        self.uniform(0.0, TAU)
    }

    pub fn unit_complex(&mut self) -> C {
        C::from_polar(1.0, self.angle())
    }

    pub fn pick(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

/// A random element of SU(2,1) for the canonical form, built from unitary
/// rotations of the positive plane, a boost, and diagonal phases.
pub fn random_su21(rng: &mut Rng) -> SU21Element {
    let form = HermitianForm::canonical();
    let mut m = CMat3::identity();
    for _ in 0..2 {
        // U(2) block on (e1, e2)
        let t = rng.uniform(0.0, TAU);
        let phi = rng.unit_complex();
        let (p1, p2) = (rng.unit_complex(), rng.unit_complex());
        let mut u = CMat3::identity();
        u.0[0][0] = C::new(t.cos(), 0.0) * p1;
        u.0[0][1] = -t.sin() * phi * p2;
        u.0[1][0] = t.sin() * phi.conj() * p1;
        u.0[1][1] = C::new(t.cos(), 0.0) * p2;
        // boost on (e2, e3)
        let s = rng.uniform(0.0, 1.2);
        let mut b = CMat3::identity();
        b.0[1][1] = C::new(s.cosh(), 0.0);
        b.0[1][2] = C::new(s.sinh(), 0.0);
        b.0[2][1] = C::new(s.sinh(), 0.0);
        b.0[2][2] = C::new(s.cosh(), 0.0);
        m = m * u * b;
    }
    su21_lift(&m, &form).expect("constructed matrix preserves the form")[0]
}

/// Random regular elliptic angle pair with margins away from the special
/// locus.
pub fn random_regular_pair(rng: &mut Rng) -> AnglePair {
    loop {
        let a = rng.uniform(0.15, TAU - 0.15);
        let b = rng.uniform(0.15, TAU - 0.15);
        if (a - b).abs() > 0.15 {
            return AnglePair::new(a, b);
        }
    }
}

/// Random regular elliptic element with known class, conjugated into
/// generic position.
pub fn random_regular_elliptic(rng: &mut Rng) -> (SU21Element, AnglePair) {
    let pair = random_regular_pair(rng);
    let p = random_su21(rng);
    (elliptic_from_angle_pair(&pair).conjugate_by(&p), pair)
}

/// Random loxodromic element with known eigenvalues
/// `(e^{-2 i phi}, e^{i phi + l}, e^{i phi - l})`.
pub fn random_loxodromic(rng: &mut Rng) -> (SU21Element, [C; 3]) {
    let phi = rng.uniform(0.0, TAU);
    let l = rng.uniform(0.2, 1.5);
    let p0 = C::from_polar(1.0, -2.0 * phi);
    let lp = C::from_polar(l.exp(), phi);
    let lm = C::from_polar((-l).exp(), phi);
    let mut m = CMat3::zero();
    m.0[0][0] = p0;
    let (ch, sh) = (l.cosh(), l.sinh());
    let ph = C::from_polar(1.0, phi);
    m.0[1][1] = ph * ch;
    m.0[1][2] = ph * sh;
    m.0[2][1] = ph * sh;
    m.0[2][2] = ph * ch;
    let el = SU21Element::new(m, HermitianForm::canonical()).expect("boost block is in SU(2,1)");
    let p = random_su21(rng);
    (el.conjugate_by(&p), [p0, lp, lm])
}

/// Parameters of a random spherical triangle of mirrors whose reflection
/// products are all regular elliptic: `(r, alpha, thetas)`.
pub fn random_spherical_triangle(rng: &mut Rng) -> ([f64; 3], f64, [f64; 3]) {
    loop {
        let r = [
            rng.uniform(0.35, 0.8),
            rng.uniform(0.35, 0.8),
            rng.uniform(0.35, 0.8),
        ];
        let delta = match delta_bound(&r) {
            Some(d) => d,
            None => continue,
        };
        if delta <= -0.999 {
            continue;
        }
        let lo = delta.min(1.0).acos();
        if lo >= std::f64::consts::PI - 0.05 {
            continue;
        }
        let alpha = rng.uniform(lo + 0.05, TAU - lo - 0.05);
        let thetas = [
            rng.uniform(0.3, TAU - 0.3),
            rng.uniform(0.3, TAU - 0.3),
            rng.uniform(0.3, TAU - 0.3),
        ];
        let etas = [
            C::from_polar(1.0, thetas[0]),
            C::from_polar(1.0, thetas[1]),
            C::from_polar(1.0, thetas[2]),
        ];
        let rt = match ReflectionTriple::from_cosines(r, alpha, etas) {
            Ok(rt) => rt,
            Err(_) => continue,
        };
        let mut all_elliptic = true;
        for m in rt.products() {
            match su21_lift(&m, &HermitianForm::canonical()) {
                Ok(lifts) => {
                    if !lifts[0].classify().is_elliptic() {
                        all_elliptic = false;
                        break;
                    }
                }
                Err(_) => {
                    all_elliptic = false;
                    break;
                }
            }
        }
        if all_elliptic {
            return (r, alpha, thetas);
        }
    }
}
