//! Fixed-size complex vectors and matrices.
//!
//! Everything in the crate happens in  C^3, so the linear algebra is written
//! out by hand for 3-vectors and 3x3 matrices instead of pulling in a general
//! matrix library.

use crate::error::{Error, Result};
use num_complex::Complex64 as C;
use std::f64::consts::TAU;
use std::ops::{Add, Mul, Neg, Sub};

/// Argument of a complex number mapped into `[0, 2*pi)`.
pub fn arg_2pi(z: C) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

/// `x` reduced into `[0, 2*pi)`.
pub fn wrap_2pi(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Wrap-aware distance between two angles.
pub fn angle_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Complex 3-vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CVec3(pub [C; 3]);

impl CVec3 {
    pub fn new(a: C, b: C, c: C) -> Self {
        CVec3([a, b, c])
    }

    pub fn from_reals(a: f64, b: f64, c: f64) -> Self {
        CVec3([C::new(a, 0.0), C::new(b, 0.0), C::new(c, 0.0)])
    }

    pub fn zero() -> Self {
        CVec3([C::new(0.0, 0.0); 3])
    }

    pub fn basis(k: usize) -> Self {
        let mut v = Self::zero();
        v.0[k] = C::new(1.0, 0.0);
        v
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn conj(&self) -> Self {
        CVec3([self.0[0].conj(), self.0[1].conj(), self.0[2].conj()])
    }

    pub fn scale(&self, s: C) -> Self {
        CVec3([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }

    /// Bilinear dot product (no conjugation).
    pub fn dot(&self, other: &Self) -> C {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    /// Standard Hermitian dot product of C^3, conjugate-linear in `other`.
    pub fn hdot(&self, other: &Self) -> C {
        self.0[0] * other.0[0].conj() + self.0[1] * other.0[1].conj()
            + self.0[2] * other.0[2].conj()
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.hdot(self).re.sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Index of the component with the largest modulus.
    pub fn argmax(&self) -> usize {
        let mut k = 0;
        for i in 1..3 {
            if self.0[i].norm() > self.0[k].norm() {
                k = i;
            }
        }
        k
    }

    /// Rescale so the largest component has modulus 1.
    pub fn normalize_max(&self) -> Result<Self> {
        let m = self.max_abs();
        if m <= 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(self.scale(C::new(1.0 / m, 0.0)))
    }

    /// Rescale to Euclidean norm 1.
    pub fn normalize(&self) -> Result<Self> {
        let n = self.norm();
        if n <= 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(self.scale(C::new(1.0 / n, 0.0)))
    }

    /// Exterior product in C^3 with the right-handed convention
    /// `e1 ^ e2 = e3`.
    pub fn wedge(&self, other: &Self) -> Self {
        let u = &self.0;
        let v = &other.0;
        CVec3([
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        ])
    }

    /// Projective distance: sin of the Hermitian angle between the lines
    /// spanned by the two vectors. Zero iff projectively equal.
    pub fn projective_gap(&self, other: &Self) -> f64 {
        let nu = self.norm();
        let nv = other.norm();
        if nu == 0.0 || nv == 0.0 {
            return 1.0;
        }
        let c = self.hdot(other).norm() / (nu * nv);
        (1.0 - c * c).max(0.0).sqrt()
    }
}

impl Add for CVec3 {
    type Output = CVec3;
    fn add(self, o: CVec3) -> CVec3 {
        CVec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for CVec3 {
    type Output = CVec3;
    fn sub(self, o: CVec3) -> CVec3 {
        CVec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for CVec3 {
    type Output = CVec3;
    fn neg(self) -> CVec3 {
        CVec3([-self.0[0], -self.0[1], -self.0[2]])
    }
}

/// Complex 3x3 matrix, row major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMat3(pub [[C; 3]; 3]);

impl CMat3 {
    pub fn zero() -> Self {
        CMat3([[C::new(0.0, 0.0); 3]; 3])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for k in 0..3 {
            m.0[k][k] = C::new(1.0, 0.0);
        }
        m
    }

    pub fn diag(a: C, b: C, c: C) -> Self {
        let mut m = Self::zero();
        m.0[0][0] = a;
        m.0[1][1] = b;
        m.0[2][2] = c;
        m
    }

    pub fn from_rows(r0: CVec3, r1: CVec3, r2: CVec3) -> Self {
        CMat3([r0.0, r1.0, r2.0])
    }

    pub fn from_cols(c0: CVec3, c1: CVec3, c2: CVec3) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            m.0[i][0] = c0.0[i];
            m.0[i][1] = c1.0[i];
            m.0[i][2] = c2.0[i];
        }
        m
    }

    pub fn row(&self, i: usize) -> CVec3 {
        CVec3(self.0[i])
    }

    pub fn col(&self, j: usize) -> CVec3 {
        CVec3([self.0[0][j], self.0[1][j], self.0[2][j]])
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        let mut m = *self;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = m.0[i][j].conj();
            }
        }
        m
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn scale(&self, s: C) -> Self {
        let mut m = *self;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] *= s;
            }
        }
        m
    }

    pub fn trace(&self) -> C {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn det(&self) -> C {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Inverse through the adjugate. Fails when the determinant is tiny
    /// compared to the matrix scale.
    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        let scale = self.max_abs();
        if d.norm() <= 1e-14 * scale * scale * scale {
            return Err(Error::DegenerateConfiguration);
        }
        let m = &self.0;
        let cof = |i: usize, j: usize| -> C {
            let r = [(i + 1) % 3, (i + 2) % 3];
            let c = [(j + 1) % 3, (j + 2) % 3];
            m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
        };
        let mut inv = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                // adjugate: transpose of the cofactor matrix
                inv.0[i][j] = cof(j, i) / d;
            }
        }
        Ok(inv)
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Outer product `col * row`, no conjugation.
    pub fn outer(col: &CVec3, row: &CVec3) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = col.0[i] * row.0[j];
            }
        }
        m
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = *self;
        let mut acc = Self::identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    /// Frobenius distance to another matrix.
    pub fn dist(&self, other: &Self) -> f64 {
        (*self - *other).frobenius()
    }

    /// Least-squares phase aligning `other` to `self`, then the residual:
    /// returns `min_c || self - c * other ||_F` together with the optimal `c`.
    pub fn projective_dist(&self, other: &Self) -> (f64, C) {
        let mut num = C::new(0.0, 0.0);
        let mut den = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                num += self.0[i][j] * other.0[i][j].conj();
                den += other.0[i][j].norm_sqr();
            }
        }
        if den == 0.0 {
            return (self.frobenius(), C::new(0.0, 0.0));
        }
        let c = num / den;
        (self.dist(&other.scale(c)), c)
    }
}

impl Add for CMat3 {
    type Output = CMat3;
    fn add(self, o: CMat3) -> CMat3 {
        let mut m = self;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] += o.0[i][j];
            }
        }
        m
    }
}

impl Sub for CMat3 {
    type Output = CMat3;
    fn sub(self, o: CMat3) -> CMat3 {
        let mut m = self;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] -= o.0[i][j];
            }
        }
        m
    }
}

impl Mul for CMat3 {
    type Output = CMat3;
    fn mul(self, o: CMat3) -> CMat3 {
        let mut m = CMat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                let mut s = C::new(0.0, 0.0);
                for k in 0..3 {
                    s += self.0[i][k] * o.0[k][j];
                }
                m.0[i][j] = s;
            }
        }
        m
    }
}

impl Mul<CVec3> for CMat3 {
    type Output = CVec3;
    fn mul(self, v: CVec3) -> CVec3 {
        let mut out = CVec3::zero();
        for i in 0..3 {
            let mut s = C::new(0.0, 0.0);
            for k in 0..3 {
                s += self.0[i][k] * v.0[k];
            }
            out.0[i] = s;
        }
        out
    }
}

/// Basis of the null space of `m`, using full-pivot Gaussian elimination.
/// Pivots below `rel_tol` times the largest pivot count as zero.
pub fn null_space(m: &CMat3, rel_tol: f64) -> Vec<CVec3> {
    let mut a = m.0;
    let mut col_perm = [0usize, 1, 2];
    let mut pivots = 0usize;
    let mut pivot_scale = 0.0f64;

    for step in 0..3 {
        // largest remaining entry
        let (mut bi, mut bj, mut bv) = (step, step, 0.0f64);
        for i in step..3 {
            for j in step..3 {
                let v = a[i][j].norm();
                if v > bv {
                    bi = i;
                    bj = j;
                    bv = v;
                }
            }
        }
        if step == 0 {
            pivot_scale = bv.max(1e-300);
        }
        if bv <= rel_tol * pivot_scale {
            break;
        }
        a.swap(step, bi);
        for row in a.iter_mut() {
            row.swap(step, bj);
        }
        col_perm.swap(step, bj);
        for i in (step + 1)..3 {
            let f = a[i][step] / a[step][step];
            for j in step..3 {
                a[i][j] -= f * a[step][j];
            }
        }
        pivots += 1;
    }

    let rank = pivots;
    let mut basis = Vec::new();
    for free in rank..3 {
        // back substitution with x[free] = 1, other free vars 0
        let mut x = [C::new(0.0, 0.0); 3];
        x[free] = C::new(1.0, 0.0);
        for i in (0..rank).rev() {
            let mut s = C::new(0.0, 0.0);
            for j in (i + 1)..3 {
                s += a[i][j] * x[j];
            }
            x[i] = -s / a[i][i];
        }
        let mut v = CVec3::zero();
        for k in 0..3 {
            v.0[col_perm[k]] = x[k];
        }
        if let Ok(n) = v.normalize() {
            basis.push(n);
        }
    }
    basis
}
