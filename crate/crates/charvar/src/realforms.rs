//! Constructive classification of representations into real forms of
//! SL(n,C).
//!
//! An irreducible representation whose character is fixed by the involution
//! induced by A -> conj A is conjugated into SL(n,R) or SL(n/2,H) through the
//! Hilbert-90 matrices Q_alpha; one whose character is fixed by the
//! involution induced by A -> conj(t(A))^-1 preserves a Hermitian form P and
//! is conjugated into SU(p,q), with (p,q) the signature of P. Every verdict
//! carries the conjugator and the witness scalars so it can be re-verified
//! independently.

use num_complex::Complex64 as C64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::charcoords::{coords_from_rep, phi1, phi2};
use crate::error::{Error, Result};
use crate::groups::{is_order_three, OrderThree, TwoGenRep};
use crate::linalg::{
    self, hermitian_eigen, kernel_basis, omega_pow, ComplexMatrix, Dense, ONE, ZERO,
};
use crate::tol::{self, Tolerances};

/// Hermitian matrix together with its signature.
#[derive(Debug, Clone)]
pub struct HermitianForm {
    pub matrix: ComplexMatrix,
    pub signature: (usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealFormClass {
    SLnR,
    SLnHalfH,
    SUpq(usize, usize),
    ReducibleChar,
    NotFixed,
}

impl RealFormClass {
    pub fn describe(&self, dim: usize) -> String {
        match self {
            RealFormClass::SLnR => format!("SL({dim},R)"),
            RealFormClass::SLnHalfH => format!("SL({},H)", dim / 2),
            RealFormClass::SUpq(p, q) => format!("SU({p},{q})"),
            RealFormClass::ReducibleChar => "reducible character".to_string(),
            RealFormClass::NotFixed => "not fixed by Phi1 or Phi2".to_string(),
        }
    }
}

/// The proof objects of a real-form verdict: the conjugator, the invariant
/// form when there is one, the proportionality scalar and the re-checked
/// defect of the defining identity on the conjugated generators.
#[derive(Debug, Clone)]
pub struct RealizationCertificate {
    pub conjugator: ComplexMatrix,
    pub form: Option<HermitianForm>,
    pub lambda: C64,
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct RealFormVerdict {
    pub class: RealFormClass,
    pub certificate: Option<RealizationCertificate>,
    /// Second realization when the character is fixed by both involutions.
    pub secondary: Option<(RealFormClass, RealizationCertificate)>,
    pub diagnostics: Vec<String>,
}

impl RealFormVerdict {
    fn bare(class: RealFormClass) -> Self {
        RealFormVerdict { class, certificate: None, secondary: None, diagnostics: Vec::new() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// Dimension of a proper invariant subspace.
    Reducible(usize),
}

// ---------------------------------------------------------------------------
// Irreducibility
// ---------------------------------------------------------------------------

/// Eigenvector of an order-3 matrix for eigenvalue omega^k, from the
/// spectral projector (I + omega^-k M + omega^-2k M^2) / 3.
fn order3_eigenvector(m: &ComplexMatrix, k: i64) -> Vec<C64> {
    let m2 = m.mul(m);
    let proj = ComplexMatrix::identity(3)
        .add(&m.scale(omega_pow(-k)))
        .add(&m2.scale(omega_pow(-2 * k)))
        .scale(C64::new(1.0 / 3.0, 0.0));
    // Largest column of the rank-1 projector.
    let (mut best, mut best_norm) = (0usize, -1.0f64);
    for j in 0..3 {
        let norm: f64 = (0..3).map(|i| proj.get(i, j).norm_sqr()).sum();
        if norm > best_norm {
            best_norm = norm;
            best = j;
        }
    }
    let mut v: Vec<C64> = (0..3).map(|i| proj.get(i, best)).collect();
    let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    for x in v.iter_mut() {
        *x /= norm;
    }
    v
}

/// Relative defect of span(v) being invariant under M.
fn line_invariance_residual(m: &ComplexMatrix, v: &[C64]) -> f64 {
    let mv = m.mul_vec(v);
    let c: C64 = v.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum();
    let res: f64 = mv
        .iter()
        .zip(v)
        .map(|(a, b)| (a - c * b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let scale: f64 = mv.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    res / scale.max(1e-12)
}

/// Deduplicated eigenvalues of a 3x3 matrix.
fn distinct_eigenvalues(m: &ComplexMatrix) -> Vec<C64> {
    let evs = linalg::eigenvalues3(m);
    let scale = evs.iter().map(|e| e.norm()).fold(1.0f64, f64::max);
    let mut out: Vec<C64> = Vec::new();
    for e in evs {
        if !out.iter().any(|o| (o - e).norm() < 1e-6 * scale) {
            out.push(e);
        }
    }
    out
}

/// True when the pair has a common eigenvector, decided by the kernel of
/// the stacked matrix [[S - mu I], [T - nu I]] over all eigenvalue pairs.
fn has_common_eigenvector(s: &ComplexMatrix, t: &ComplexMatrix) -> bool {
    let n = s.dim();
    for mu in distinct_eigenvalues(s) {
        for nu in distinct_eigenvalues(t) {
            let mut stacked = Dense::zeros(2 * n, n);
            for i in 0..n {
                for j in 0..n {
                    let d = if i == j { ONE } else { ZERO };
                    stacked.set(i, j, s.get(i, j) - mu * d);
                    stacked.set(n + i, j, t.get(i, j) - nu * d);
                }
            }
            if !kernel_basis(&stacked, 1e-6).is_empty() {
                return true;
            }
        }
    }
    false
}

/// Decides irreducibility of a 3-dimensional two-generator representation.
///
/// A line invariant under both generators is found through the eigenlines
/// of S (spectral projectors when S has order 3); a 2-dimensional invariant
/// subspace is a common eigenvector of the dual pair.
pub fn invariant_subspace_test(rep: &TwoGenRep) -> Result<Irreducibility> {
    assert_eq!(rep.dim(), 3, "invariant_subspace_test expects dimension 3");
    let scale = 1.0 + rep.s.norm_inf().max(rep.t.norm_inf());
    if rep.s.is_scalar(tol::EPS_ORDER3 * scale) || rep.t.is_scalar(tol::EPS_ORDER3 * scale) {
        return Err(Error::DegenerateSpectrum);
    }

    let order3 = matches!(
        is_order_three(&rep.s),
        Ok(OrderThree::TraceCriterion) | Ok(OrderThree::ScalarOmega(_))
    );
    let line = if order3 {
        (0..3).any(|k| {
            let v = order3_eigenvector(&rep.s, k);
            line_invariance_residual(&rep.t, &v) < 1e-7
        })
    } else {
        has_common_eigenvector(&rep.s, &rep.t)
    };
    if line {
        return Ok(Irreducibility::Reducible(1));
    }

    // 2-dimensional invariant subspaces are 1-dimensional ones of the dual.
    let sd = rep.s.transpose().inverse()?;
    let td = rep.t.transpose().inverse()?;
    let plane = if order3 {
        (0..3).any(|k| {
            let v = order3_eigenvector(&sd, k);
            line_invariance_residual(&td, &v) < 1e-7
        })
    } else {
        has_common_eigenvector(&sd, &td)
    };
    if plane {
        return Ok(Irreducibility::Reducible(2));
    }
    Ok(Irreducibility::Irreducible)
}

/// Burnside criterion, any dimension: the pair is irreducible exactly when
/// the words in (S, T) span all of M_n(C).
pub fn is_irreducible_burnside(rep: &TwoGenRep) -> bool {
    let n = rep.dim();
    let mut words: Vec<ComplexMatrix> = vec![ComplexMatrix::identity(n)];
    let mut frontier = words.clone();
    for _len in 0..(2 * n - 2) {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for m in &frontier {
            next.push(m.mul(&rep.s));
            next.push(m.mul(&rep.t));
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let mut stacked = Dense::zeros(words.len(), n * n);
    for (r, m) in words.iter().enumerate() {
        // Scale each word to unit size so long products do not dominate.
        let scale = m.norm_inf().max(1e-300);
        for i in 0..n {
            for j in 0..n {
                stacked.set(r, i * n + j, m.get(i, j) / scale);
            }
        }
    }
    linalg::rank(&stacked, tol::EPS_RANK) == n * n
}

// ---------------------------------------------------------------------------
// Conjugator solving
// ---------------------------------------------------------------------------

/// Matrix of the stacked intertwiner X -> (X A1 - A2 X, X B1 - B2 X) acting
/// on vectorized n x n matrices.
fn stacked_intertwiner(
    a1: &ComplexMatrix,
    b1: &ComplexMatrix,
    a2: &ComplexMatrix,
    b2: &ComplexMatrix,
) -> Dense {
    let n = a1.dim();
    let k = n * n;
    let mut out = Dense::zeros(2 * k, k);
    let mut basis = ComplexMatrix::zeros(n);
    for col in 0..k {
        basis.set(col / n, col % n, ONE);
        let top = basis.mul(a1).sub(&a2.mul(&basis));
        let bot = basis.mul(b1).sub(&b2.mul(&basis));
        for i in 0..n {
            for j in 0..n {
                out.set(i * n + j, col, top.get(i, j));
                out.set(k + i * n + j, col, bot.get(i, j));
            }
        }
        basis.set(col / n, col % n, ZERO);
    }
    out
}

fn reshape(v: &[C64], n: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, v[i * n + j]);
        }
    }
    m
}

/// Solves G rho1 G^-1 = rho2 for G, det-normalized. The kernel of the
/// stacked 2n^2 x n^2 operator must be exactly one-dimensional.
pub fn solve_conjugator(rep1: &TwoGenRep, rep2: &TwoGenRep) -> Result<ComplexMatrix> {
    assert_eq!(rep1.dim(), rep2.dim(), "conjugator of mismatched dimensions");
    let n = rep1.dim();
    let op = stacked_intertwiner(&rep1.s, &rep1.t, &rep2.s, &rep2.t);
    let kernel = kernel_basis(&op, tol::EPS_RANK);
    match kernel.len() {
        0 => Err(Error::NoConjugator),
        1 => {
            let g0 = reshape(&kernel[0], n);
            let g = g0.normalize_det().map_err(|_| Error::NoConjugator)?;
            let ginv = g.inverse().map_err(|_| Error::NoConjugator)?;
            let res = g
                .mul(&rep1.s)
                .mul(&ginv)
                .sub(&rep2.s)
                .norm_inf()
                .max(g.mul(&rep1.t).mul(&ginv).sub(&rep2.t).norm_inf());
            if res >= tol::EPS_CERT * (1.0 + rep2.s.norm_inf().max(rep2.t.norm_inf())) {
                return Err(Error::NoConjugator);
            }
            Ok(g)
        }
        _ => Err(Error::AmbiguousConjugator),
    }
}

// Keep the lambda produced by the rephasing step available to realize_phi2
// without widening the public HermitianForm type.
struct FormWithLambda {
    matrix: ComplexMatrix,
    signature: (usize, usize),
    lambda: C64,
}

/// The Hermitian form preserved by an irreducible representation with
/// Phi2-fixed character: the one-dimensional kernel of
/// X -> (S* X S - X, T* X T - X), rephased Hermitian and normalized so its
/// largest eigenvalue modulus is 1.
pub fn invariant_hermitian_form(rep: &TwoGenRep) -> Result<HermitianForm> {
    let full = invariant_hermitian_form_full(rep)?;
    Ok(HermitianForm { matrix: full.matrix, signature: full.signature })
}

fn invariant_hermitian_form_full(rep: &TwoGenRep) -> Result<FormWithLambda> {
    let t = coords_from_rep(rep);
    let dev = phi2(&t).max_deviation(&t);
    if dev >= tol::EPS_FIXED {
        return Err(Error::NotFixedByPhi2(dev));
    }
    let n = rep.dim();
    let k = n * n;
    // X -> S* X S - X stacked with the T equation.
    let sa = rep.s.adjoint();
    let ta = rep.t.adjoint();
    let mut op = Dense::zeros(2 * k, k);
    let mut basis = ComplexMatrix::zeros(n);
    for col in 0..k {
        basis.set(col / n, col % n, ONE);
        let top = sa.mul(&basis).mul(&rep.s).sub(&basis);
        let bot = ta.mul(&basis).mul(&rep.t).sub(&basis);
        for i in 0..n {
            for j in 0..n {
                op.set(i * n + j, col, top.get(i, j));
                op.set(k + i * n + j, col, bot.get(i, j));
            }
        }
        basis.set(col / n, col % n, ZERO);
    }
    let kernel = kernel_basis(&op, tol::EPS_RANK);
    if kernel.len() != 1 {
        return Err(Error::KernelDimensionNotOne(kernel.len()));
    }
    let p0 = reshape(&kernel[0], n);
    // P0* = mu P0 with |mu| = 1; rephase by sqrt(mu) to make it Hermitian.
    let adj = p0.adjoint();
    let mut num = ZERO;
    let mut den = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            num += p0.get(i, j).conj() * adj.get(i, j);
            den += p0.get(i, j).norm_sqr();
        }
    }
    let mu = num / den;
    if (mu.norm() - 1.0).abs() > 1e-6 {
        return Err(Error::NotProportionalToAdjoint);
    }
    let c = C64::from_polar(1.0, mu.arg() / 2.0);
    let p1 = p0.scale(c);
    let asym = p1.sub(&p1.adjoint()).norm_inf();
    if asym > 1e-6 * p1.norm_inf() {
        return Err(Error::NotProportionalToAdjoint);
    }
    let herm = p1.add(&p1.adjoint()).scale(C64::new(0.5, 0.0));
    let (eigs, _) = hermitian_eigen(&herm);
    let max = eigs.iter().map(|e| e.abs()).fold(0.0, f64::max);
    let p = herm.scale(C64::new(1.0 / max, 0.0));
    let signature = linalg::hermitian_signature(&p)?;
    Ok(FormWithLambda { matrix: p, signature, lambda: mu })
}

/// Realizes a Phi2-fixed irreducible representation inside SU(p,q): returns
/// the verdict with a conjugator C satisfying C* I_{p,q} C = P, so that
/// C rho C^-1 preserves I_{p,q}. The signature is normalized to p >= q.
pub fn realize_phi2(rep: &TwoGenRep) -> Result<RealFormVerdict> {
    let form = invariant_hermitian_form_full(rep)?;
    let mut p_mat = form.matrix;
    let (mut p, mut q) = form.signature;
    if q > p {
        p_mat = p_mat.scale(-ONE);
        std::mem::swap(&mut p, &mut q);
    }
    let n = rep.dim();
    // P = U diag(lambda) U* with positives first; C = diag(sqrt|l|) U*.
    let (eigs, u) = hermitian_eigen(&p_mat);
    let mut c = u.adjoint();
    for (i, &e) in eigs.iter().enumerate() {
        let s = e.abs().sqrt();
        for j in 0..n {
            let v = c.get(i, j);
            c.set(i, j, v * s);
        }
    }
    let ipq = ComplexMatrix::i_pq(p, q);
    let cinv = c.inverse()?;
    let mut residual: f64 = 0.0;
    for g in [&rep.s, &rep.t] {
        let m = c.mul(g).mul(&cinv);
        residual = residual.max(m.adjoint().mul(&ipq).mul(&m).sub(&ipq).norm_inf());
    }
    let certificate = RealizationCertificate {
        conjugator: c,
        form: Some(HermitianForm { matrix: p_mat, signature: (p, q) }),
        lambda: form.lambda,
        residual,
    };
    Ok(RealFormVerdict {
        class: RealFormClass::SUpq(p, q),
        certificate: Some(certificate),
        secondary: None,
        diagnostics: Vec::new(),
    })
}

/// Realizes a Phi1-fixed irreducible representation inside SL(n,R)
/// (lambda = +1) or SL(n/2,H) (lambda = -1, n even) through the explicit
/// Hilbert-90 matrices Q_alpha.
pub fn realize_phi1(rep: &TwoGenRep) -> Result<RealFormVerdict> {
    let t = coords_from_rep(rep);
    let dev = phi1(&t).max_deviation(&t);
    if dev >= tol::EPS_FIXED {
        return Err(Error::NotFixedByPhi1(dev));
    }
    let n = rep.dim();
    // P rho(g) = conj(rho(g)) P for both generators.
    let op = stacked_intertwiner(&rep.s, &rep.t, &rep.s.conj(), &rep.t.conj());
    let kernel = kernel_basis(&op, tol::EPS_RANK);
    if kernel.len() != 1 {
        return Err(Error::KernelDimensionNotOne(kernel.len()));
    }
    let p = reshape(&kernel[0], n).normalize_det()?;
    let pconj_p = p.conj().mul(&p);
    let lambda = pconj_p.trace() / C64::new(n as f64, 0.0);
    let dev = pconj_p.sub(&ComplexMatrix::identity(n).scale(lambda)).norm_inf();
    if dev > 1e-7 * (1.0 + lambda.norm()) || lambda.im.abs() > 1e-7 {
        return Err(Error::LambdaNotPlusMinusOne(lambda));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5e_a1_f0_0d);
    if (lambda.re - 1.0).abs() < 1e-7 {
        // Real case: Q_alpha = alpha I + conj(alpha) conj(P), rho goes real
        // under Q^-1 rho Q.
        for _ in 0..tol::MAX_ALPHA_DRAWS {
            let alpha = C64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
            let q = ComplexMatrix::identity(n)
                .scale(alpha)
                .add(&p.conj().scale(alpha.conj()));
            if q.det().norm() <= 1e-6 {
                continue;
            }
            let qinv = q.inverse()?;
            let mut residual: f64 = 0.0;
            for g in [&rep.s, &rep.t] {
                residual = residual.max(qinv.mul(g).mul(&q).max_imag());
            }
            let certificate = RealizationCertificate {
                conjugator: qinv,
                form: None,
                lambda,
                residual,
            };
            return Ok(RealFormVerdict {
                class: RealFormClass::SLnR,
                certificate: Some(certificate),
                secondary: None,
                diagnostics: Vec::new(),
            });
        }
        Err(Error::NoInvertibleQ(tol::MAX_ALPHA_DRAWS))
    } else if (lambda.re + 1.0).abs() < 1e-7 {
        if n % 2 != 0 {
            // Impossible for odd n: lambda^n = 1 forces lambda = 1.
            return Err(Error::LambdaNotPlusMinusOne(lambda));
        }
        let j = ComplexMatrix::j_2m(n / 2);
        for _ in 0..tol::MAX_ALPHA_DRAWS {
            let alpha = C64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
            let q = ComplexMatrix::identity(n)
                .scale(-alpha)
                .sub(&j.mul(&p.conj()).scale(alpha.conj()));
            if q.det().norm() <= 1e-6 {
                continue;
            }
            // conj(Q) rho conj(Q)^-1 satisfies conj(M)^-1 J M = J.
            let c = q.conj();
            let cinv = c.inverse()?;
            let mut residual: f64 = 0.0;
            for g in [&rep.s, &rep.t] {
                let m = c.mul(g).mul(&cinv);
                residual = residual.max(m.conj().inverse()?.mul(&j).mul(&m).sub(&j).norm_inf());
            }
            let certificate = RealizationCertificate {
                conjugator: c,
                form: None,
                lambda,
                residual,
            };
            return Ok(RealFormVerdict {
                class: RealFormClass::SLnHalfH,
                certificate: Some(certificate),
                secondary: None,
                diagnostics: Vec::new(),
            });
        }
        Err(Error::NoInvertibleQ(tol::MAX_ALPHA_DRAWS))
    } else {
        Err(Error::LambdaNotPlusMinusOne(lambda))
    }
}

/// Conjugator between two unitary irreducible representations with equal
/// characters, rescaled so the conjugator itself is unitary.
pub fn unitary_conjugator(rep1: &TwoGenRep, rep2: &TwoGenRep) -> Result<ComplexMatrix> {
    let n = rep1.dim();
    let id = ComplexMatrix::identity(n);
    for rep in [rep1, rep2] {
        for g in [&rep.s, &rep.t] {
            if g.adjoint().mul(g).sub(&id).norm_inf() >= 1e-8 {
                return Err(Error::NotUnitaryInput);
            }
        }
    }
    let g = solve_conjugator(rep1, rep2)?;
    // Identity-form pullback: lambda (G* G) = I with lambda real positive.
    let gram = g.adjoint().mul(&g);
    let c = gram.trace().re / n as f64;
    let lambda = 1.0 / c;
    Ok(g.scale(C64::new(lambda.sqrt(), 0.0)))
}

/// Full dispatcher: handles scalar and reducible cases, tests fixedness of
/// the character under both involutions, and invokes the matching
/// realizers. All realization failures are folded into the verdict.
pub fn classify_representation(rep: &TwoGenRep, tols: Tolerances) -> RealFormVerdict {
    let n = rep.dim();
    let scale = 1.0 + rep.s.norm_inf().max(rep.t.norm_inf());
    if rep.s.is_scalar(tols.order3 * scale) || rep.t.is_scalar(tols.order3 * scale) {
        let mut v = RealFormVerdict::bare(RealFormClass::ReducibleChar);
        v.diagnostics.push("scalar generator (totally reducible direction)".into());
        return v;
    }
    let irreducible = if n == 3 {
        match invariant_subspace_test(rep) {
            Ok(Irreducibility::Irreducible) => true,
            Ok(Irreducibility::Reducible(_)) => false,
            Err(_) => false,
        }
    } else {
        is_irreducible_burnside(rep)
    };
    if !irreducible {
        return RealFormVerdict::bare(RealFormClass::ReducibleChar);
    }

    let t = coords_from_rep(rep);
    let fixed1 = phi1(&t).max_deviation(&t) < tols.fixed;
    let fixed2 = phi2(&t).max_deviation(&t) < tols.fixed;

    let mut diagnostics = Vec::new();
    let first = if fixed1 {
        match realize_phi1(rep) {
            Ok(v) => Some(v),
            Err(e) => {
                diagnostics.push(format!("phi1 realization failed: {e}"));
                None
            }
        }
    } else {
        None
    };
    let second = if fixed2 {
        match realize_phi2(rep) {
            Ok(v) => Some(v),
            Err(e) => {
                diagnostics.push(format!("phi2 realization failed: {e}"));
                None
            }
        }
    } else {
        None
    };

    match (first, second) {
        (Some(mut v1), Some(v2)) => {
            v1.secondary = v2.certificate.map(|c| (v2.class, c));
            v1.diagnostics.extend(diagnostics);
            v1
        }
        (Some(mut v), None) | (None, Some(mut v)) => {
            v.diagnostics.extend(diagnostics);
            v
        }
        (None, None) => {
            let mut v = RealFormVerdict::bare(if fixed1 || fixed2 {
                // Fixed character but realization failed: degenerate input.
                RealFormClass::ReducibleChar
            } else {
                RealFormClass::NotFixed
            });
            v.diagnostics = diagnostics;
            v
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupTag;
    use crate::sampling;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn block_reducible(rng: &mut StdRng) -> TwoGenRep {
        // S = S' (+) 1, T = T' (+) 1 with order-3 SL(2,C) blocks.
        let sp = ComplexMatrix::from_real_rows(&[vec![0.0, -1.0], vec![1.0, -1.0]]);
        let h = sampling::random_sl(2, rng);
        let tp = h.mul(&sp).mul(&h.inverse().unwrap());
        let embed = |b: &ComplexMatrix| {
            let mut m = ComplexMatrix::identity(3);
            for i in 0..2 {
                for j in 0..2 {
                    m.set(i, j, b.get(i, j));
                }
            }
            m
        };
        TwoGenRep::new(embed(&sp), embed(&tp), GroupTag::Z3Z3).unwrap()
    }

    #[test]
    fn reducible_block_pairs_detected() {
        let mut rng = StdRng::seed_from_u64(41);
        for _ in 0..20 {
            let rep = block_reducible(&mut rng);
            assert_eq!(invariant_subspace_test(&rep).unwrap(), Irreducibility::Reducible(1));
            assert!(!is_irreducible_burnside(&rep));
        }
    }

    #[test]
    fn simultaneous_diagonal_is_reducible() {
        let d = ComplexMatrix::diag(&[ONE, omega_pow(1), omega_pow(2)]);
        let rep = TwoGenRep::new(d.clone(), d, GroupTag::Z3Z3).unwrap();
        assert!(matches!(invariant_subspace_test(&rep).unwrap(), Irreducibility::Reducible(_)));
    }

    #[test]
    fn scalar_generator_is_degenerate() {
        let s = ComplexMatrix::identity(3).scale(omega_pow(1));
        let d = ComplexMatrix::diag(&[ONE, omega_pow(1), omega_pow(2)]);
        let rep = TwoGenRep::new(s, d, GroupTag::Z3Z3).unwrap();
        assert!(matches!(invariant_subspace_test(&rep), Err(Error::DegenerateSpectrum)));
    }

    #[test]
    fn random_order3_pairs_are_irreducible() {
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..50 {
            let rep = sampling::random_order3_pair(&mut rng);
            assert_eq!(invariant_subspace_test(&rep).unwrap(), Irreducibility::Irreducible);
            assert!(is_irreducible_burnside(&rep));
        }
    }

    #[test]
    fn non_order3_reducible_pairs_detected() {
        // Upper block structure with generic (not order-3) spectrum.
        let mut rng = StdRng::seed_from_u64(43);
        for _ in 0..20 {
            let a2 = sampling::random_sl(2, &mut rng);
            let b2 = sampling::random_sl(2, &mut rng);
            let embed = |b: &ComplexMatrix| {
                let mut m = ComplexMatrix::identity(3);
                for i in 0..2 {
                    for j in 0..2 {
                        m.set(i, j, b.get(i, j));
                    }
                }
                m
            };
            let h = sampling::random_sl(3, &mut rng);
            let rep = TwoGenRep::new(embed(&a2), embed(&b2), GroupTag::F2)
                .unwrap()
                .conjugate_by(&h)
                .unwrap();
            assert!(matches!(
                invariant_subspace_test(&rep).unwrap(),
                Irreducibility::Reducible(_)
            ));
        }
    }

    #[test]
    fn conjugator_roundtrip() {
        let mut rng = StdRng::seed_from_u64(44);
        for _ in 0..30 {
            let rep1 = sampling::random_order3_pair(&mut rng);
            let h = sampling::random_sl(3, &mut rng);
            let rep2 = rep1.conjugate_by(&h).unwrap();
            let g = solve_conjugator(&rep1, &rep2).unwrap();
            let ginv = g.inverse().unwrap();
            let res = g
                .mul(&rep1.s)
                .mul(&ginv)
                .sub(&rep2.s)
                .norm_inf()
                .max(g.mul(&rep1.t).mul(&ginv).sub(&rep2.t).norm_inf());
            assert!(res < 1e-8, "conjugation residual {res}");
        }
    }

    #[test]
    fn conjugator_of_rep_with_itself_is_scalar() {
        let mut rng = StdRng::seed_from_u64(45);
        let rep = sampling::random_order3_pair(&mut rng);
        let g = solve_conjugator(&rep, &rep).unwrap();
        // det-normalized scalar: a cube root of unity times the identity.
        let ok = (0..3).any(|k| {
            g.sub(&ComplexMatrix::identity(3).scale(omega_pow(k))).norm_inf() < 1e-8
        });
        assert!(ok, "self-conjugator is not a cube root of unity: {g:?}");
    }

    #[test]
    fn conjugator_rejects_different_characters() {
        let mut rng = StdRng::seed_from_u64(46);
        for _ in 0..10 {
            let rep1 = sampling::random_order3_pair(&mut rng);
            let rep2 = sampling::random_order3_pair(&mut rng);
            assert!(matches!(solve_conjugator(&rep1, &rep2), Err(Error::NoConjugator)));
        }
    }

    #[test]
    fn invariant_form_of_unitary_pairs() {
        let mut rng = StdRng::seed_from_u64(47);
        for _ in 0..20 {
            let rep = sampling::random_su3_order3_pair(&mut rng);
            let f = invariant_hermitian_form(&rep).unwrap();
            let (p, q) = f.signature;
            assert!((p, q) == (3, 0) || (p, q) == (0, 3), "signature {:?}", (p, q));
        }
    }

    #[test]
    fn invariant_form_of_su21_pairs_survives_conjugation() {
        let mut rng = StdRng::seed_from_u64(48);
        for _ in 0..20 {
            let rep = sampling::random_su21_order3_pair(&mut rng);
            let f = invariant_hermitian_form(&rep).unwrap();
            let (p, q) = f.signature;
            assert!((p, q) == (2, 1) || (p, q) == (1, 2), "signature {:?}", (p, q));

            let h = sampling::random_sl(3, &mut rng);
            let conj = rep.conjugate_by(&h).unwrap();
            let f2 = invariant_hermitian_form(&conj).unwrap();
            let (p2, q2) = f2.signature;
            assert!((p2, q2) == (2, 1) || (p2, q2) == (1, 2));
        }
    }

    #[test]
    fn realize_phi2_roundtrips() {
        let mut rng = StdRng::seed_from_u64(49);
        for i in 0..30 {
            let base = if i % 2 == 0 {
                sampling::random_su3_order3_pair(&mut rng)
            } else {
                sampling::random_su21_order3_pair(&mut rng)
            };
            let h = sampling::random_sl(3, &mut rng);
            let rep = base.conjugate_by(&h).unwrap();
            let verdict = realize_phi2(&rep).unwrap();
            let expect = if i % 2 == 0 { RealFormClass::SUpq(3, 0) } else { RealFormClass::SUpq(2, 1) };
            assert_eq!(verdict.class, expect);
            assert!(verdict.certificate.unwrap().residual < 1e-7);
        }
    }

    #[test]
    fn realize_phi1_real_case() {
        let mut rng = StdRng::seed_from_u64(50);
        for _ in 0..20 {
            let base = sampling::random_sl3r_pair(&mut rng);
            if !is_irreducible_burnside(&base) {
                continue;
            }
            let h = sampling::random_sl(3, &mut rng);
            let rep = base.conjugate_by(&h).unwrap();
            let verdict = realize_phi1(&rep).unwrap();
            assert_eq!(verdict.class, RealFormClass::SLnR);
            let cert = verdict.certificate.unwrap();
            assert!((cert.lambda.re - 1.0).abs() < 1e-7);
            assert!(cert.residual < 1e-7, "imaginary residue {}", cert.residual);
        }
    }

    #[test]
    fn realize_phi1_quaternionic_case() {
        let mut rng = StdRng::seed_from_u64(51);
        for _ in 0..10 {
            let base = sampling::random_sl2h_pair(&mut rng);
            let h = sampling::random_sl(4, &mut rng);
            let rep = base.conjugate_by(&h).unwrap();
            let verdict = realize_phi1(&rep).unwrap();
            assert_eq!(verdict.class, RealFormClass::SLnHalfH);
            let cert = verdict.certificate.unwrap();
            assert!((cert.lambda.re + 1.0).abs() < 1e-7);
            assert!(cert.residual < 1e-7, "J-form residue {}", cert.residual);
        }
    }

    #[test]
    fn unitary_conjugator_roundtrip() {
        let mut rng = StdRng::seed_from_u64(52);
        for _ in 0..20 {
            let rep = sampling::random_su3_order3_pair(&mut rng);
            let u = sampling::random_unitary(3, &mut rng);
            let rep2 = rep.conjugate_by(&u).unwrap();
            let g = unitary_conjugator(&rep, &rep2).unwrap();
            let id = ComplexMatrix::identity(3);
            assert!(g.adjoint().mul(&g).sub(&id).norm_inf() < 1e-7);
            let ginv = g.inverse().unwrap();
            let res = g.mul(&rep.s).mul(&ginv).sub(&rep2.s).norm_inf();
            assert!(res < 1e-7);
        }
    }

    #[test]
    fn unitary_conjugator_rejects_nonunitary() {
        let mut rng = StdRng::seed_from_u64(53);
        let rep = sampling::random_order3_pair(&mut rng);
        assert!(matches!(unitary_conjugator(&rep, &rep), Err(Error::NotUnitaryInput)));
    }

    #[test]
    fn classify_dispatcher() {
        let tols = Tolerances::default();
        let mut rng = StdRng::seed_from_u64(54);

        let su3 = sampling::random_su3_order3_pair(&mut rng);
        assert_eq!(classify_representation(&su3, tols).class, RealFormClass::SUpq(3, 0));

        let slr = sampling::random_sl3r_order3_pair(&mut rng);
        let v = classify_representation(&slr, tols);
        assert_eq!(v.class, RealFormClass::SLnR);

        let generic = sampling::random_order3_pair(&mut rng);
        assert_eq!(classify_representation(&generic, tols).class, RealFormClass::NotFixed);

        let scalar = TwoGenRep::new(
            ComplexMatrix::identity(3).scale(omega_pow(1)),
            ComplexMatrix::diag(&[ONE, omega_pow(1), omega_pow(2)]),
            GroupTag::Z3Z3,
        )
        .unwrap();
        assert_eq!(classify_representation(&scalar, tols).class, RealFormClass::ReducibleChar);
    }

    #[test]
    fn no_cross_signature_contradiction() {
        // An irreducible representation never certifies two distinct
        // signatures: classify is conjugation-invariant at verdict level.
        let tols = Tolerances::default();
        let mut rng = StdRng::seed_from_u64(55);
        for i in 0..40 {
            let base = if i % 2 == 0 {
                sampling::random_su3_order3_pair(&mut rng)
            } else {
                sampling::random_su21_order3_pair(&mut rng)
            };
            let first = classify_representation(&base, tols).class;
            let h = sampling::random_sl(3, &mut rng);
            let conj = base.conjugate_by(&h).unwrap();
            let second = classify_representation(&conj, tols).class;
            assert_eq!(first, second);
        }
    }
}
