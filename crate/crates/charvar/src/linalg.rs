//! Dense complex linear algebra at tiny sizes.
//!
//! Matrices of the domain ([`ComplexMatrix`]) are square of dimension 2..4;
//! vectorized matrix operators (up to 32 x 16) live in [`Dense`]. Rank and
//! nullspace decisions go through a one-sided Jacobi SVD, Hermitian
//! eigenvalues through a cyclic Jacobi iteration; both are accurate and
//! dependency-free at these sizes.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

pub type C64 = Complex64;

pub const ZERO: C64 = Complex64::new(0.0, 0.0);
pub const ONE: C64 = Complex64::new(1.0, 0.0);

/// Primitive cube root of unity, omega = exp(2 pi i / 3).
pub fn omega() -> C64 {
    C64::new(-0.5, 0.75f64.sqrt())
}

/// omega^k with the exponent reduced mod 3.
pub fn omega_pow(k: i64) -> C64 {
    match k.rem_euclid(3) {
        0 => ONE,
        1 => omega(),
        _ => omega().conj(),
    }
}

/// Dense square complex matrix of dimension 2..4, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    a: Vec<C64>,
}

impl std::fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                let v = self.get(i, j);
                write!(f, "({:+.6}{:+.6}i) ", v.re, v.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!((2..=4).contains(&n), "dimension must be 2..4, got {n}");
        ComplexMatrix { n, a: vec![ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, ONE);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "row {i} has wrong length");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn diag(entries: &[C64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &v) in entries.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    /// 3x3 matrix from real entries.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let cplx: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&cplx)
    }

    /// diag(I_p, -I_q), the standard form of signature (p, q).
    pub fn i_pq(p: usize, q: usize) -> Self {
        let n = p + q;
        let mut m = Self::zeros(n);
        for i in 0..p {
            m.set(i, i, ONE);
        }
        for i in p..n {
            m.set(i, i, -ONE);
        }
        m
    }

    /// The symplectic block matrix [[0, I_m], [-I_m, 0]] of size 2m.
    pub fn j_2m(m: usize) -> Self {
        let n = 2 * m;
        let mut j = Self::zeros(n);
        for i in 0..m {
            j.set(i, m + i, ONE);
            j.set(m + i, i, -ONE);
        }
        j
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.a[i * self.n + j] = v;
    }

    pub fn is_finite(&self) -> bool {
        self.a.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(j, i, self.get(i, j));
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        ComplexMatrix { n: self.n, a: self.a.iter().map(|v| v.conj()).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn scale(&self, c: C64) -> Self {
        ComplexMatrix { n: self.n, a: self.a.iter().map(|v| v * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        ComplexMatrix {
            n: self.n,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        ComplexMatrix {
            n: self.n,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut s = ZERO;
                for k in 0..n {
                    s += self.get(i, k) * other.get(k, j);
                }
                m.set(i, j, s);
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// M^k for integer k (negative powers go through the inverse).
    pub fn powi(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::identity(self.n);
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Largest entry modulus.
    pub fn norm_inf(&self) -> f64 {
        self.a.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn norm_fro(&self) -> f64 {
        self.a.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn det(&self) -> C64 {
        Dense::from_matrix(self).det()
    }

    pub fn inverse(&self) -> Result<Self> {
        let inv = Dense::from_matrix(self).inverse()?;
        Ok(inv.to_matrix())
    }

    /// Rescales to determinant one by the principal n-th root.
    pub fn normalize_det(&self) -> Result<Self> {
        let d = self.det();
        if d.norm() < 1e-300 {
            return Err(Error::SingularMatrix);
        }
        let root = d.powf(1.0 / self.n as f64);
        Ok(self.scale(ONE / root))
    }

    /// True when the matrix is within `eps` of a scalar multiple of I.
    pub fn is_scalar(&self, eps: f64) -> bool {
        let c = self.trace() / C64::new(self.n as f64, 0.0);
        let mut dev: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                let target = if i == j { c } else { ZERO };
                dev = dev.max((self.get(i, j) - target).norm());
            }
        }
        dev < eps
    }

    pub fn max_imag(&self) -> f64 {
        self.a.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }
}

/// Coefficients (c2, c1) of the characteristic polynomial
/// X^3 - c2 X^2 + c1 X - 1 of a matrix in SL(3,C): c2 = tr M, c1 = tr M^-1.
pub fn char_poly(m: &ComplexMatrix) -> Result<(C64, C64)> {
    assert_eq!(m.dim(), 3, "char_poly is specific to dimension 3");
    let d = m.det();
    let dev = (d - ONE).norm();
    if dev >= tol::EPS_DET {
        return Err(Error::DeterminantNotOne(dev));
    }
    Ok((m.trace(), m.inverse()?.trace()))
}

// ---------------------------------------------------------------------------
// Rectangular dense matrices for vectorized operators.
// ---------------------------------------------------------------------------

/// Rectangular dense complex matrix, row-major. Carrier for vectorized
/// matrix operators (e.g. the 2n^2 x n^2 conjugator systems).
#[derive(Clone, Debug)]
pub struct Dense {
    pub rows: usize,
    pub cols: usize,
    a: Vec<C64>,
}

impl Dense {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Dense { rows, cols, a: vec![ZERO; rows * cols] }
    }

    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Dense { rows: m.n, cols: m.n, a: m.a.clone() }
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        assert_eq!(self.rows, self.cols);
        let mut m = ComplexMatrix::zeros(self.rows);
        m.a.copy_from_slice(&self.a);
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.a[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.a[i * self.cols + j] = v;
    }

    /// Builds the matrix of a linear operator on C^k from its action on the
    /// standard basis vectors.
    pub fn from_operator<F>(k: usize, mut op: F) -> Self
    where
        F: FnMut(&[C64]) -> Vec<C64>,
    {
        let mut m = Dense::zeros(k, k);
        let mut e = vec![ZERO; k];
        for j in 0..k {
            e[j] = ONE;
            let col = op(&e);
            assert_eq!(col.len(), k);
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
            e[j] = ZERO;
        }
        m
    }

    /// Stacks `self` on top of `other` (same column count).
    pub fn vstack(&self, other: &Dense) -> Dense {
        assert_eq!(self.cols, other.cols);
        let mut m = Dense::zeros(self.rows + other.rows, self.cols);
        m.a[..self.a.len()].copy_from_slice(&self.a);
        m.a[self.a.len()..].copy_from_slice(&other.a);
        m
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> C64 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.a.clone();
        let mut det = ONE;
        for col in 0..n {
            let (mut piv, mut best) = (col, 0.0f64);
            for r in col..n {
                let v = a[r * n + col].norm();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best == 0.0 {
                return ZERO;
            }
            if piv != col {
                for j in 0..n {
                    a.swap(col * n + j, piv * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det *= p;
            for r in (col + 1)..n {
                let f = a[r * n + col] / p;
                for j in col..n {
                    let v = a[col * n + j];
                    a[r * n + j] -= f * v;
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan with partial pivoting.
    pub fn inverse(&self) -> Result<Dense> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.a.clone();
        let mut inv = Dense::zeros(n, n);
        for i in 0..n {
            inv.set(i, i, ONE);
        }
        let scale = self.a.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1e-300);
        for col in 0..n {
            let (mut piv, mut best) = (col, 0.0f64);
            for r in col..n {
                let v = a[r * n + col].norm();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best <= 1e-14 * scale {
                return Err(Error::SingularMatrix);
            }
            if piv != col {
                for j in 0..n {
                    a.swap(col * n + j, piv * n + j);
                    inv.a.swap(col * n + j, piv * n + j);
                }
            }
            let p = a[col * n + col];
            for j in 0..n {
                a[col * n + j] /= p;
                inv.a[col * n + j] /= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * n + col];
                if f == ZERO {
                    continue;
                }
                for j in 0..n {
                    let v = a[col * n + j];
                    a[r * n + j] -= f * v;
                    let w = inv.a[col * n + j];
                    inv.a[r * n + j] -= f * w;
                }
            }
        }
        Ok(inv)
    }
}

// ---------------------------------------------------------------------------
// Jacobi rotations: Hermitian eigendecomposition and one-sided SVD.
// ---------------------------------------------------------------------------

/// Complex Jacobi rotation parameters (c real, s complex with c^2+|s|^2=1)
/// diagonalizing the Hermitian 2x2 [[app, apq], [conj(apq), aqq]].
fn jacobi_rotation(app: f64, aqq: f64, apq: C64) -> (f64, C64) {
    let abs = apq.norm();
    if abs == 0.0 {
        return (1.0, ZERO);
    }
    let phase = apq / abs;
    let tau = (aqq - app) / (2.0 * abs);
    // Smaller root of t^2 - 2 tau t - 1 = 0.
    let t = if tau >= 0.0 {
        -1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, phase * (t * c))
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi iteration.
///
/// Returns eigenvalues in descending order and the unitary U with
/// A = U diag(lambda) U*.
pub fn hermitian_eigen(a: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let n = a.dim();
    // Work on the Hermitian average so tiny asymmetries cannot drift.
    let mut h = a.add(&a.adjoint()).scale(C64::new(0.5, 0.0));
    let mut u = ComplexMatrix::identity(n);
    let scale = h.norm_fro().max(1.0);
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += h.get(p, q).norm_sqr();
            }
        }
        if (2.0 * off).sqrt() <= tol::EPS_JACOBI * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = h.get(p, q);
                if apq.norm() <= 1e-300 {
                    continue;
                }
                let (c, s) = jacobi_rotation(h.get(p, p).re, h.get(q, q).re, apq);
                // Columns: M <- M R with R = [[c, -s], [conj(s), c]] at (p, q).
                for i in 0..n {
                    let hip = h.get(i, p);
                    let hiq = h.get(i, q);
                    h.set(i, p, hip * c + hiq * s.conj());
                    h.set(i, q, -hip * s + hiq * c);
                    let uip = u.get(i, p);
                    let uiq = u.get(i, q);
                    u.set(i, p, uip * c + uiq * s.conj());
                    u.set(i, q, -uip * s + uiq * c);
                }
                // Rows: M <- R* M.
                for j in 0..n {
                    let hpj = h.get(p, j);
                    let hqj = h.get(q, j);
                    h.set(p, j, hpj * c + hqj * s);
                    h.set(q, j, -hpj * s.conj() + hqj * c);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| h.get(j, j).re.partial_cmp(&h.get(i, i).re).unwrap());
    let eigs: Vec<f64> = order.iter().map(|&i| h.get(i, i).re).collect();
    let mut v = ComplexMatrix::zeros(n);
    for (newj, &oldj) in order.iter().enumerate() {
        for i in 0..n {
            v.set(i, newj, u.get(i, oldj));
        }
    }
    (eigs, v)
}

/// Signature (p, q) of a Hermitian matrix: counts of positive and negative
/// eigenvalues. Rejects non-Hermitian input and near-singular forms.
pub fn hermitian_signature(p: &ComplexMatrix) -> Result<(usize, usize)> {
    hermitian_signature_with(p, tol::EPS_HERM, tol::EPS_RANK)
}

pub fn hermitian_signature_with(
    p: &ComplexMatrix,
    eps_herm: f64,
    eps_rank: f64,
) -> Result<(usize, usize)> {
    let asym = p.sub(&p.adjoint()).norm_inf();
    if asym >= eps_herm {
        return Err(Error::NotHermitian(asym));
    }
    let (eigs, _) = hermitian_eigen(p);
    let max = eigs.iter().map(|e| e.abs()).fold(0.0, f64::max);
    let min = eigs.iter().map(|e| e.abs()).fold(f64::INFINITY, f64::min);
    if max == 0.0 || min <= eps_rank * max {
        return Err(Error::NearSingularForm(if max == 0.0 { 0.0 } else { min / max }));
    }
    let pos = eigs.iter().filter(|&&e| e > 0.0).count();
    Ok((pos, p.dim() - pos))
}

/// Thin SVD of an m x n matrix (m >= n) by one-sided Jacobi: returns the
/// singular values in descending order and the right singular vectors as
/// columns of an n x n unitary.
pub fn svd_right(a: &Dense) -> (Vec<f64>, Dense) {
    let (m, n) = (a.rows, a.cols);
    assert!(m >= n, "svd_right expects a tall matrix, got {m}x{n}");
    // Column-major copy of the working matrix.
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| (0..m).map(|i| a.get(i, j)).collect()).collect();
    let mut v = Dense::zeros(n, n);
    for i in 0..n {
        v.set(i, i, ONE);
    }
    for _sweep in 0..60 {
        let mut rotated = false;
        for i in 0..n {
            for j in (i + 1)..n {
                let mut aii = 0.0f64;
                let mut ajj = 0.0f64;
                let mut g = ZERO;
                for k in 0..m {
                    aii += cols[i][k].norm_sqr();
                    ajj += cols[j][k].norm_sqr();
                    g += cols[i][k].conj() * cols[j][k];
                }
                if g.norm() <= 1e-14 * (aii * ajj).sqrt() + 1e-300 {
                    continue;
                }
                rotated = true;
                let (c, s) = jacobi_rotation(aii, ajj, g);
                for k in 0..m {
                    let ci = cols[i][k];
                    let cj = cols[j][k];
                    cols[i][k] = ci * c + cj * s.conj();
                    cols[j][k] = -ci * s + cj * c;
                }
                for k in 0..n {
                    let vi = v.get(k, i);
                    let vj = v.get(k, j);
                    v.set(k, i, vi * c + vj * s.conj());
                    v.set(k, j, -vi * s + vj * c);
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<(f64, usize)> = (0..n)
        .map(|j| (cols[j].iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt(), j))
        .collect();
    sv.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let sigma: Vec<f64> = sv.iter().map(|(s, _)| *s).collect();
    let mut vs = Dense::zeros(n, n);
    for (newj, &(_, oldj)) in sv.iter().enumerate() {
        for i in 0..n {
            vs.set(i, newj, v.get(i, oldj));
        }
    }
    (sigma, vs)
}

/// Orthonormal basis of the kernel of a tall matrix: right singular vectors
/// whose singular value falls below `eps_rank` times the largest one.
pub fn kernel_basis(a: &Dense, eps_rank: f64) -> Vec<Vec<C64>> {
    let (sigma, v) = svd_right(a);
    let smax = sigma.first().copied().unwrap_or(0.0);
    let n = a.cols;
    let mut basis = Vec::new();
    for (j, &s) in sigma.iter().enumerate() {
        if s <= eps_rank * smax {
            basis.push((0..n).map(|i| v.get(i, j)).collect());
        }
    }
    basis
}

/// Numerical rank of a tall matrix at the given relative threshold.
pub fn rank(a: &Dense, eps_rank: f64) -> usize {
    let (sigma, _) = svd_right(a);
    let smax = sigma.first().copied().unwrap_or(0.0);
    sigma.iter().filter(|&&s| s > eps_rank * smax).count()
}

/// Orthonormal kernel basis of a square linear operator on C^k.
pub fn nullspace(a: &Dense) -> Vec<Vec<C64>> {
    assert_eq!(a.rows, a.cols, "nullspace expects a square operator");
    kernel_basis(a, tol::EPS_RANK)
}

// ---------------------------------------------------------------------------
// Small polynomial solvers.
// ---------------------------------------------------------------------------

/// Roots of x^2 + bx + c over C.
pub fn quadratic_roots(b: C64, c: C64) -> (C64, C64) {
    let disc = b * b - 4.0 * c;
    let sq = disc.sqrt();
    // Pick the sign that avoids cancellation.
    let q = if (b + sq).norm() >= (b - sq).norm() { -(b + sq) / 2.0 } else { -(b - sq) / 2.0 };
    if q.norm() > 0.0 {
        (q, c / q)
    } else {
        ((-b + sq) / 2.0, (-b - sq) / 2.0)
    }
}

/// Roots of x^3 + a x^2 + b x + c over C (Cardano).
pub fn cubic_roots(a: C64, b: C64, c: C64) -> [C64; 3] {
    // Depressed cubic t^3 + pt + q with x = t - a/3.
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = c + a * (2.0 * a * a - 9.0 * b) / 27.0;
    let half_q = q / 2.0;
    let disc = half_q * half_q + (p / 3.0).powu(3);
    let sq = disc.sqrt();
    // Choose the cube-root argument with the larger modulus for stability.
    let u3 = if (-half_q + sq).norm() >= (-half_q - sq).norm() { -half_q + sq } else { -half_q - sq };
    if u3.norm() < 1e-300 {
        // p == 0 as well: triple root.
        let r = (-q).powf(1.0 / 3.0);
        return [r - shift, r * omega() - shift, r * omega().conj() - shift];
    }
    let u = u3.powf(1.0 / 3.0);
    let mut roots = [ZERO; 3];
    for (k, r) in roots.iter_mut().enumerate() {
        let uk = u * omega_pow(k as i64);
        *r = uk - p / (3.0 * uk) - shift;
    }
    roots
}

/// Eigenvalues of a 3x3 matrix via its characteristic polynomial
/// X^3 - tr X^2 + tr(adj) X - det.
pub fn eigenvalues3(m: &ComplexMatrix) -> [C64; 3] {
    assert_eq!(m.dim(), 3);
    let tr = m.trace();
    let tr2 = m.mul(m).trace();
    let second = (tr * tr - tr2) / 2.0; // sum of principal 2x2 minors
    let det = m.det();
    cubic_roots(-tr, second, -det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn rng(seed: u64) -> StdRng {
        StdRng::seed_from_u64(seed)
    }

    fn random_matrix(n: usize, rng: &mut StdRng) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            }
        }
        m
    }

    fn random_sl(n: usize, rng: &mut StdRng) -> ComplexMatrix {
        loop {
            let m = random_matrix(n, rng);
            if m.det().norm() > 1e-3 {
                return m.normalize_det().unwrap();
            }
        }
    }

    /// Kernel dimension by plain Gaussian elimination, independent of the
    /// Jacobi SVD route.
    fn kernel_dim_gauss(a: &Dense) -> usize {
        let (rows, cols) = (a.rows, a.cols);
        let mut m: Vec<Vec<C64>> =
            (0..rows).map(|i| (0..cols).map(|j| a.get(i, j)).collect()).collect();
        let scale = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| a.get(i, j).norm())
            .fold(0.0f64, f64::max)
            .max(1e-300);
        let mut rank = 0;
        for col in 0..cols {
            let mut piv = None;
            let mut best = 1e-10 * scale;
            for r in rank..rows {
                if m[r][col].norm() > best {
                    best = m[r][col].norm();
                    piv = Some(r);
                }
            }
            let Some(piv) = piv else { continue };
            m.swap(rank, piv);
            let p = m[rank][col];
            for r in 0..rows {
                if r == rank {
                    continue;
                }
                let f = m[r][col] / p;
                for j in 0..cols {
                    let v = m[rank][j];
                    m[r][j] -= f * v;
                }
            }
            rank += 1;
        }
        cols - rank
    }

    #[test]
    fn inverse_roundtrip() {
        let mut r = rng(1);
        for n in 2..=4 {
            for _ in 0..50 {
                let m = random_sl(n, &mut r);
                let inv = m.inverse().unwrap();
                let res = m.mul(&inv).sub(&ComplexMatrix::identity(n)).norm_inf();
                assert!(res < 1e-10, "inverse residual {res}");
                assert!((m.det() - ONE).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn char_poly_identity_and_omega() {
        let id = ComplexMatrix::identity(3);
        let (c2, c1) = char_poly(&id).unwrap();
        assert!((c2 - C64::new(3.0, 0.0)).norm() < 1e-12);
        assert!((c1 - C64::new(3.0, 0.0)).norm() < 1e-12);

        let d = ComplexMatrix::diag(&[ONE, omega(), omega_pow(2)]);
        let (c2, c1) = char_poly(&d).unwrap();
        assert!(c2.norm() < 1e-12);
        assert!(c1.norm() < 1e-12);
    }

    #[test]
    fn char_poly_rejects_non_sl() {
        let m = ComplexMatrix::diag(&[C64::new(2.0, 0.0), ONE, ONE]);
        assert!(matches!(char_poly(&m), Err(Error::DeterminantNotOne(_))));
    }

    #[test]
    fn cayley_hamilton_residual() {
        // Random M in SL(3,C): M^3 - c2 M^2 + c1 M - I = 0.
        let mut r = rng(2);
        for _ in 0..200 {
            let m = random_sl(3, &mut r);
            let (c2, c1) = char_poly(&m).unwrap();
            let m2 = m.mul(&m);
            let m3 = m2.mul(&m);
            let res = m3
                .sub(&m2.scale(c2))
                .add(&m.scale(c1))
                .sub(&ComplexMatrix::identity(3))
                .norm_inf();
            assert!(res < 1e-9, "Cayley-Hamilton residual {res}");
        }
    }

    #[test]
    fn hermitian_eigen_reconstructs() {
        let mut r = rng(3);
        for n in 2..=4 {
            for _ in 0..50 {
                let g = random_matrix(n, &mut r);
                let h = g.add(&g.adjoint()).scale(C64::new(0.5, 0.0));
                let (eigs, u) = hermitian_eigen(&h);
                let lambda = ComplexMatrix::diag(
                    &eigs.iter().map(|&e| C64::new(e, 0.0)).collect::<Vec<_>>(),
                );
                let rec = u.mul(&lambda).mul(&u.adjoint());
                assert!(rec.sub(&h).norm_inf() < 1e-11);
                let unit = u.adjoint().mul(&u).sub(&ComplexMatrix::identity(n)).norm_inf();
                assert!(unit < 1e-12, "eigenvector matrix not unitary: {unit}");
            }
        }
    }

    /// Real roots of the characteristic cubic of a 3x3 Hermitian matrix,
    /// brute-force oracle for the signature tests.
    fn hermitian_eigs_oracle(h: &ComplexMatrix) -> Vec<f64> {
        let tr = h.trace().re;
        let tr2 = h.mul(h).trace().re;
        let second = (tr * tr - tr2) / 2.0;
        let det = h.det().re;
        cubic_roots(C64::new(-tr, 0.0), C64::new(second, 0.0), C64::new(-det, 0.0))
            .iter()
            .map(|r| r.re)
            .collect()
    }

    #[test]
    fn signature_examples() {
        assert_eq!(hermitian_signature(&ComplexMatrix::i_pq(2, 1)).unwrap(), (2, 1));
        assert_eq!(hermitian_signature(&ComplexMatrix::identity(3)).unwrap(), (3, 0));
    }

    #[test]
    fn signature_congruence_invariance() {
        // Sylvester's law: G* diag(1,1,-1) G keeps signature (2,1); checked
        // against brute-force eigenvalues of the congruent matrix.
        let mut r = rng(4);
        let i21 = ComplexMatrix::i_pq(2, 1);
        for _ in 0..100 {
            let g = random_sl(3, &mut r);
            let p = g.adjoint().mul(&i21).mul(&g);
            assert_eq!(hermitian_signature(&p).unwrap(), (2, 1));
            let oracle = hermitian_eigs_oracle(&p);
            assert_eq!(oracle.iter().filter(|&&e| e > 0.0).count(), 2);
            assert_eq!(oracle.iter().filter(|&&e| e < 0.0).count(), 1);
        }
    }

    #[test]
    fn signature_rejects_non_hermitian() {
        let mut m = ComplexMatrix::identity(3);
        m.set(0, 1, C64::new(0.5, 0.0));
        assert!(matches!(hermitian_signature(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn nullspace_zero_and_identity() {
        let z = Dense::zeros(3, 3);
        assert_eq!(nullspace(&z).len(), 3);
        let mut id = Dense::zeros(3, 3);
        for i in 0..3 {
            id.set(i, i, ONE);
        }
        assert!(nullspace(&id).is_empty());
    }

    #[test]
    fn nullspace_commutant_of_diag() {
        // X -> X - D X D^-1 on 3x3 matrices has the diagonal matrices as
        // kernel; cross-checked against a Gaussian-elimination solve.
        let d = ComplexMatrix::diag(&[ONE, omega(), omega_pow(2)]);
        let dinv = d.inverse().unwrap();
        let op = Dense::from_operator(9, |v| {
            let mut x = ComplexMatrix::zeros(3);
            for i in 0..3 {
                for j in 0..3 {
                    x.set(i, j, v[i * 3 + j]);
                }
            }
            let y = x.sub(&d.mul(&x).mul(&dinv));
            (0..9).map(|k| y.get(k / 3, k % 3)).collect()
        });
        let basis = nullspace(&op);
        assert_eq!(basis.len(), 3);
        assert_eq!(kernel_dim_gauss(&op), 3);
        // Kernel vectors are vectorized diagonal matrices.
        for v in &basis {
            for (k, entry) in v.iter().enumerate() {
                if k % 4 != 0 {
                    assert!(entry.norm() < 1e-9, "off-diagonal component {entry}");
                }
            }
        }
    }

    #[test]
    fn nullspace_vectors_are_orthonormal_and_annihilated() {
        let mut r = rng(5);
        for _ in 0..50 {
            // Random rank-deficient 4x4: outer structure A = B C with inner
            // dimension 2.
            let mut a = Dense::zeros(4, 4);
            let b: Vec<Vec<C64>> = (0..4)
                .map(|_| (0..2).map(|_| C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))).collect())
                .collect();
            let c: Vec<Vec<C64>> = (0..2)
                .map(|_| (0..4).map(|_| C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))).collect())
                .collect();
            for i in 0..4 {
                for j in 0..4 {
                    let mut s = ZERO;
                    for k in 0..2 {
                        s += b[i][k] * c[k][j];
                    }
                    a.set(i, j, s);
                }
            }
            let basis = nullspace(&a);
            assert_eq!(basis.len(), 2);
            assert_eq!(kernel_dim_gauss(&a), 2);
            let anorm = (0..4)
                .flat_map(|i| (0..4).map(move |j| (i, j)))
                .map(|(i, j)| a.get(i, j).norm())
                .fold(0.0f64, f64::max);
            for (i, v) in basis.iter().enumerate() {
                let img = a.mul_vec(v);
                let res: f64 = img.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
                assert!(res < 1e-7 * anorm.max(1.0), "kernel residual {res}");
                for (j, w) in basis.iter().enumerate() {
                    let dot: C64 = v.iter().zip(w).map(|(a, b)| a.conj() * b).sum();
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((dot.norm() - expect).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn svd_reconstruction_rank() {
        let mut r = rng(6);
        for _ in 0..50 {
            let m = random_sl(3, &mut r);
            let d = Dense::from_matrix(&m);
            assert_eq!(rank(&d, tol::EPS_RANK), 3);
        }
    }

    #[test]
    fn cubic_roots_reproduce_spectrum() {
        let mut r = rng(7);
        for _ in 0..100 {
            let evs = [
                C64::new(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0)),
                C64::new(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0)),
                C64::new(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0)),
            ];
            let g = random_sl(3, &mut r);
            let m = g.mul(&ComplexMatrix::diag(&evs)).mul(&g.inverse().unwrap());
            let mut found = eigenvalues3(&m).to_vec();
            for ev in evs {
                let (idx, dist) = found
                    .iter()
                    .enumerate()
                    .map(|(i, f)| (i, (f - ev).norm()))
                    .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                    .unwrap();
                assert!(dist < 1e-6, "eigenvalue mismatch {dist}");
                found.remove(idx);
            }
        }
    }

    #[test]
    fn quadratic_roots_basic() {
        let (r1, r2) = quadratic_roots(C64::new(-3.0, 0.0), C64::new(2.0, 0.0));
        let mut roots = [r1.re, r2.re];
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((roots[0] - 1.0).abs() < 1e-12 && (roots[1] - 2.0).abs() < 1e-12);
    }
}
