//! The signature-(2,1) Hermitian form and the exact-formula linear algebra
//! built on it: inner products, box product, cross-ratio, type trichotomy,
//! hyperbolic distance and closed-form 3x3 eigensystems.
//!
//! The form convention is `<z,w> = w^* H z`, conjugate-linear in the second
//! argument; with the canonical `J = diag(1,1,-1)` this is
//! `z1 conj(w1) + z2 conj(w2) - z3 conj(w3)`.

use crate::complex3::{arg_2pi, null_space, CMat3, CVec3};
use crate::cubic::{cubic_roots, quadratic_roots};
use crate::error::{Error, Result};
use crate::tol;
use num_complex::Complex64 as C;

/// Type of a vector with respect to the form: sign of `<v,v>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointType {
    Negative,
    Null,
    Positive,
}

/// A Hermitian form of signature (2,1) on C^3.
#[derive(Clone, Copy, Debug)]
pub struct HermitianForm {
    matrix: CMat3,
    inverse: CMat3,
    /// Eigenvalues in descending order; the last one is negative.
    eigvals: [f64; 3],
    /// Orthonormal eigenvectors matching `eigvals`.
    eigvecs: [CVec3; 3],
}

impl HermitianForm {
    /// The canonical form `J = diag(1, 1, -1)`.
    pub fn canonical() -> Self {
        let j = CMat3::diag(C::new(1.0, 0.0), C::new(1.0, 0.0), C::new(-1.0, 0.0));
        HermitianForm {
            matrix: j,
            inverse: j,
            eigvals: [1.0, 1.0, -1.0],
            eigvecs: [CVec3::basis(0), CVec3::basis(1), CVec3::basis(2)],
        }
    }

    pub fn new(m: CMat3) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let scale = m.max_abs().max(1.0);
        if m.dist(&m.adjoint()) > tol::HERMITIAN * scale * 3.0 {
            return Err(Error::NotHermitian);
        }
        let sym = (m + m.adjoint()).scale(C::new(0.5, 0.0));
        let (vals, vecs) = hermitian_eigen(&sym);
        if !(vals[0] > tol::POINT_TYPE * scale
            && vals[1] > tol::POINT_TYPE * scale
            && vals[2] < -tol::POINT_TYPE * scale)
        {
            return Err(Error::InvalidSignature);
        }
        Ok(HermitianForm {
            matrix: sym,
            inverse: sym.inverse()?,
            eigvals: vals,
            eigvecs: vecs,
        })
    }

    pub fn matrix(&self) -> &CMat3 {
        &self.matrix
    }

    /// Eigenvalues of the form matrix in descending order: two positive,
    /// one negative.
    pub fn eigenvalues(&self) -> [f64; 3] {
        self.eigvals
    }

    pub fn inverse(&self) -> &CMat3 {
        &self.inverse
    }

    /// `<u,v> = v^* H u`.
    pub fn inner(&self, u: &CVec3, v: &CVec3) -> C {
        (self.matrix * *u).hdot(v)
    }

    /// A basis orthogonal for the form with types (+, +, -).
    pub fn definite_basis(&self) -> [CVec3; 3] {
        self.eigvecs
    }

    pub fn approx_eq(&self, other: &Self, atol: f64) -> bool {
        self.matrix.dist(&other.matrix) <= atol
    }
}

/// `<u,v>` with respect to `form`.
pub fn herm_inner(u: &CVec3, v: &CVec3, form: &HermitianForm) -> C {
    form.inner(u, v)
}

/// Box product `u [x] v = J conj(u ^ v)`, orthogonal to both arguments for
/// the canonical form.
pub fn box_product(u: &CVec3, v: &CVec3) -> CVec3 {
    let w = u.wedge(v).conj();
    CVec3::new(w.0[0], w.0[1], -w.0[2])
}

/// Form-twisted box product: the vector orthogonal to `u` and `v` for an
/// arbitrary form, `H^{-1} conj(u ^ v)`.
pub fn polar_of_pair(u: &CVec3, v: &CVec3, form: &HermitianForm) -> CVec3 {
    *form.inverse() * u.wedge(v).conj()
}

/// Cross-ratio `X(a,b,c,d) = (<c,a><d,b>)/(<c,b><d,a>)`.
pub fn cross_ratio(a: &CVec3, b: &CVec3, c: &CVec3, d: &CVec3, form: &HermitianForm) -> Result<C> {
    let a = a.normalize_max()?;
    let b = b.normalize_max()?;
    let c = c.normalize_max()?;
    let d = d.normalize_max()?;
    let cb = form.inner(&c, &b);
    let da = form.inner(&d, &a);
    if cb.norm() <= tol::POINT_TYPE || da.norm() <= tol::POINT_TYPE {
        return Err(Error::DegenerateConfiguration);
    }
    Ok(form.inner(&c, &a) * form.inner(&d, &b) / (cb * da))
}

/// Sign trichotomy of `<v,v>` after rescaling `v` to max component modulus 1.
pub fn point_type(v: &CVec3, form: &HermitianForm) -> Result<PointType> {
    let n = v.normalize_max()?;
    let s = form.inner(&n, &n).re;
    Ok(if s < -tol::POINT_TYPE {
        PointType::Negative
    } else if s > tol::POINT_TYPE {
        PointType::Positive
    } else {
        PointType::Null
    })
}

/// Distance in the ball model: `cosh^2(d/2) = <z,w><w,z> / (<z,z><w,w>)`.
pub fn hyperbolic_distance(z: &CVec3, w: &CVec3, form: &HermitianForm) -> Result<f64> {
    if point_type(z, form)? != PointType::Negative || point_type(w, form)? != PointType::Negative {
        return Err(Error::NotInBall);
    }
    let num = (form.inner(z, w) * form.inner(w, z)).re;
    let den = (form.inner(z, z) * form.inner(w, w)).re;
    let c2 = (num / den).max(1.0);
    Ok(2.0 * c2.sqrt().acosh())
}

/// One eigenpair of a matrix, with the type of the eigenvector.
#[derive(Clone, Copy, Debug)]
pub struct EigenEntry {
    pub value: C,
    pub vector: CVec3,
    pub point_type: PointType,
}

/// Full eigensystem of a 3x3 matrix, sorted by the principal argument of the
/// eigenvalue in `[0, 2*pi)`, ties broken by modulus.
#[derive(Clone, Copy, Debug)]
pub struct EigenSystem {
    pub entries: [EigenEntry; 3],
}

impl EigenSystem {
    pub fn values(&self) -> [C; 3] {
        [
            self.entries[0].value,
            self.entries[1].value,
            self.entries[2].value,
        ]
    }

    /// The entry whose eigenvector has negative type, if any.
    pub fn negative_entry(&self) -> Option<&EigenEntry> {
        self.entries
            .iter()
            .find(|e| e.point_type == PointType::Negative)
    }

    pub fn entries_of_type(&self, t: PointType) -> Vec<&EigenEntry> {
        self.entries.iter().filter(|e| e.point_type == t).collect()
    }
}

/// Coefficients of the characteristic polynomial `l^3 + a2 l^2 + a1 l + a0`.
fn char_poly(m: &CMat3) -> (C, C, C) {
    let tr = m.trace();
    let m2 = *m * *m;
    let sigma2 = (tr * tr - m2.trace()) * 0.5;
    (-tr, sigma2, -m.det())
}

/// Cardano loses half the digits at a double root. A double root of `p` is
/// also a root of `p'`, which the quadratic formula delivers at full
/// precision: pick the critical point nearest the clustered pair.
fn refine_double_root(guess: C, a2: C, a1: C) -> C {
    let crits = quadratic_roots(C::new(3.0, 0.0), a2 * 2.0, a1);
    if (crits[0] - guess).norm() <= (crits[1] - guess).norm() {
        crits[0]
    } else {
        crits[1]
    }
}

/// Closed-form eigensystem via Cardano on the characteristic cubic with
/// Newton polishing, eigenvectors from rank-revealing elimination.
///
/// Repeated eigenvalues with a two-dimensional eigenspace get a basis that
/// diagonalizes the restricted form, so each returned vector has a definite
/// type whenever the restriction is non-degenerate. A repeated eigenvalue
/// without a matching eigenspace is reported as `DefectiveMatrix`.
pub fn eigen_system(m: &CMat3, form: &HermitianForm) -> Result<EigenSystem> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let (a2, mut a1, mut a0) = char_poly(m);
    // determinant-one form-preserving matrices satisfy
    // sigma_2 = conj(trace) exactly; snapping the coefficients removes the
    // rounding amplification of the generic formulas under conjugation by
    // large group elements
    let scale2 = m.frobenius().powi(2).max(1.0);
    if (a0 + C::new(1.0, 0.0)).norm() < 1e-9 * scale2 && (a1 + a2.conj()).norm() < 1e-7 * scale2 {
        a1 = -a2.conj();
        a0 = C::new(-1.0, 0.0);
    }
    let roots = cubic_roots(a2, a1, a0);
    let scale = roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
    let ctol = tol::EIGEN_CLUSTER * scale;
    let mnorm = m.frobenius().max(1e-300);

    let d01 = (roots[0] - roots[1]).norm();
    let d02 = (roots[0] - roots[2]).norm();
    let d12 = (roots[1] - roots[2]).norm();

    let mut entries: Vec<EigenEntry> = Vec::with_capacity(3);

    if d01 < ctol && d02 < ctol && d12 < ctol {
        // triple eigenvalue: only scalar matrices are diagonalisable
        let lambda = m.trace() / C::new(3.0, 0.0);
        if m.dist(&CMat3::identity().scale(lambda)) > 1e-7 * mnorm {
            return Err(Error::DefectiveMatrix);
        }
        for v in form.definite_basis() {
            entries.push(make_entry(lambda, v, form)?);
        }
    } else if d01.min(d02).min(d12) < ctol {
        // one repeated pair
        let (pair, _) = if d01 < d02 && d01 < d12 {
            ((roots[0], roots[1]), roots[2])
        } else if d02 < d12 {
            ((roots[0], roots[2]), roots[1])
        } else {
            ((roots[1], roots[2]), roots[0])
        };
        let double = refine_double_root((pair.0 + pair.1) * 0.5, a2, a1);
        let simple = -a2 - double * 2.0;
        let shifted = *m - CMat3::identity().scale(double);
        let ns = null_space(&shifted, tol::RANK);
        if ns.len() < 2 {
            return Err(Error::DefectiveMatrix);
        }
        for v in refine_pair_basis(&ns[0], &ns[1], form) {
            entries.push(make_entry(double, v, form)?);
        }
        let vs = eigenvector_of(m, simple)?;
        entries.push(make_entry(simple, vs, form)?);
    } else {
        for r in roots {
            let v = eigenvector_of(m, r)?;
            entries.push(make_entry(r, v, form)?);
        }
    }

    // residual check
    for e in &entries {
        let res = (*m * e.vector - e.vector.scale(e.value)).norm();
        if res > tol::EIGEN_RESIDUAL * mnorm {
            return Err(Error::DefectiveMatrix);
        }
    }

    entries.sort_by(|a, b| {
        let ka = (arg_2pi(a.value), a.value.norm());
        let kb = (arg_2pi(b.value), b.value.norm());
        ka.partial_cmp(&kb).unwrap()
    });
    Ok(EigenSystem {
        entries: [entries[0], entries[1], entries[2]],
    })
}

fn make_entry(value: C, vector: CVec3, form: &HermitianForm) -> Result<EigenEntry> {
    let vector = vector.normalize_max()?;
    Ok(EigenEntry {
        value,
        vector,
        point_type: point_type(&vector, form)?,
    })
}

fn eigenvector_of(m: &CMat3, lambda: C) -> Result<CVec3> {
    let shifted = *m - CMat3::identity().scale(lambda);
    let ns = null_space(&shifted, tol::RANK);
    ns.into_iter().next().ok_or(Error::DefectiveMatrix)
}

/// Basis of a 2-dimensional eigenspace diagonalizing the restricted form.
fn refine_pair_basis(w1: &CVec3, w2: &CVec3, form: &HermitianForm) -> [CVec3; 2] {
    // restricted Gram, Hermitian 2x2
    let a = form.inner(w1, w1).re;
    let d = form.inner(w2, w2).re;
    let b = form.inner(w2, w1); // <w2, w1>
    let (x1, x2) = hermitian2_eigvecs(a, b, d);
    let u1 = w1.scale(x1.0) + w2.scale(x1.1);
    let u2 = w1.scale(x2.0) + w2.scale(x2.1);
    [u1, u2]
}

/// Orthonormal eigenvectors of `[[a, b], [conj(b), d]]` with `a, d` real.
fn hermitian2_eigvecs(a: f64, b: C, d: f64) -> ((C, C), (C, C)) {
    if b.norm() < 1e-14 * (a.abs() + d.abs()).max(1.0) {
        return (
            (C::new(1.0, 0.0), C::new(0.0, 0.0)),
            (C::new(0.0, 0.0), C::new(1.0, 0.0)),
        );
    }
    let mean = 0.5 * (a + d);
    let delta = 0.5 * (a - d);
    let rad = (delta * delta + b.norm_sqr()).sqrt();
    let mu1 = mean + rad;
    let mu2 = mean - rad;
    let vec_for = |mu: f64| -> (C, C) {
        // (M - mu I) x = 0 with rows (a-mu, b) and (conj b, d-mu)
        let c1 = (-b, C::new(a - mu, 0.0));
        let c2 = (C::new(d - mu, 0.0), -b.conj());
        let v = if (c1.0.norm_sqr() + c1.1.norm_sqr()) >= (c2.0.norm_sqr() + c2.1.norm_sqr()) {
            c1
        } else {
            c2
        };
        let n = (v.0.norm_sqr() + v.1.norm_sqr()).sqrt();
        (v.0 / n, v.1 / n)
    };
    (vec_for(mu1), vec_for(mu2))
}

/// Eigendecomposition of a Hermitian 3x3 matrix: real eigenvalues in
/// descending order with orthonormal eigenvectors.
pub fn hermitian_eigen(m: &CMat3) -> ([f64; 3], [CVec3; 3]) {
    let (a2, a1, a0) = char_poly(m);
    let roots = cubic_roots(a2, a1, a0);
    let mut vals: Vec<f64> = roots.iter().map(|r| r.re).collect();
    vals.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let scale = vals.iter().map(|v| v.abs()).fold(1.0, f64::max);
    let ctol = tol::EIGEN_CLUSTER * scale;

    let mut vecs: Vec<CVec3> = Vec::with_capacity(3);
    let mut i = 0usize;
    while i < 3 {
        let mut j = i + 1;
        while j < 3 && (vals[j] - vals[i]).abs() < ctol {
            j += 1;
        }
        let mult = j - i;
        let mut lambda = vals[i..j].iter().sum::<f64>() / mult as f64;
        if mult == 2 {
            lambda = refine_double_root(C::new(lambda, 0.0), a2, a1).re;
        } else if mult == 3 {
            lambda = (-a2 / 3.0).re;
        }
        let shifted = *m - CMat3::identity().scale(C::new(lambda, 0.0));
        let mut ns = null_space(&shifted, tol::RANK);
        // Hermitian matrices are never defective; pad defensively
        while ns.len() < mult {
            ns.push(CVec3::basis(ns.len().min(2)));
        }
        // Gram-Schmidt inside the cluster (standard inner product)
        let mut cluster: Vec<CVec3> = Vec::new();
        for v in ns.into_iter().take(mult) {
            let mut w = v;
            for u in &cluster {
                let p = w.hdot(u);
                w = w - u.scale(p);
            }
            if let Ok(n) = w.normalize() {
                cluster.push(n);
            }
        }
        for k in 0..mult {
            vals[i + k] = lambda;
            vecs.push(cluster[k.min(cluster.len() - 1)]);
        }
        i = j;
    }
    ([vals[0], vals[1], vals[2]], [vecs[0], vecs[1], vecs[2]])
}

/// Vectors `c1, c2, c3` in the canonical frame whose Gram matrix
/// (`G[i][j] = <c_j, c_i>` for J) equals `h`.
///
/// Requires the eigenvalues of `h` ordered descending to be
/// `(+, +, <= 0)`; a vanishing last eigenvalue produces linearly dependent
/// vectors, which is exactly the degenerate-triangle boundary.
pub fn gram_vectors(h: &CMat3) -> Result<[CVec3; 3]> {
    let (vals, vecs) = hermitian_eigen(h);
    let scale = vals.iter().map(|v| v.abs()).fold(1.0, f64::max);
    // descending order: vals[0] must be positive, vals[2] must not be, and
    // the middle one may sit on either side of zero (a vanishing middle
    // eigenvalue is the common-orthogonal-line boundary, a vanishing last
    // one the concurrent-mirrors boundary)
    if vals[0] <= tol::POINT_TYPE * scale || vals[2] > tol::POINT_TYPE * scale {
        return Err(Error::SignatureError);
    }
    if vals[1] < -tol::POINT_TYPE * scale {
        return Err(Error::SignatureError);
    }
    let s = [vals[0].sqrt(), vals[1].max(0.0).sqrt(), (-vals[2]).max(0.0).sqrt()];
    // c_k = column k of diag(s) U^*; rows 1,2 carry the positive part and
    // row 3 the negative one, matching diag(1,1,-1)
    let mut cols = [CVec3::zero(); 3];
    for (k, col) in cols.iter_mut().enumerate() {
        for i in 0..3 {
            col.0[i] = C::new(s[i], 0.0) * vecs[i].0[k].conj();
        }
    }
    Ok(cols)
}
