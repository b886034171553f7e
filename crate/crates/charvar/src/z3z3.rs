//! The worked example: the SL(3,C)-character variety of Z/3 * Z/3.
//!
//! The variety has 15 isolated points (totally reducible characters) and a
//! four-dimensional component X0. Inside X0 the reducible characters form
//! nine lines L^(i,j) = { omega^i z real, omega^j w real,
//! omega^i z + omega^j w = 3 }, and on the fixed locus of the conj-inverse
//! involution the remaining points split into SU(3) and SU(2,1) characters.
//! This module realizes characters as explicit matrix pairs (both on and off
//! the reducible lines), classifies points, tests smoothness through the
//! rank of the defining Jacobian, and bridges the figure-eight-group
//! generator triples to (S, T) pairs.

use num_complex::Complex64 as C64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::charcoords::{
    self, coords_from_rep, delta, fix_phi2_membership, p_of, q_of, x0_from_tuple, x_roots,
    Membership, RealX0Point,
};
use crate::error::{Error, Result};
use crate::groups::{GroupTag, TwoGenRep};
use crate::linalg::{self, kernel_basis, omega_pow, ComplexMatrix, Dense, ONE, ZERO};
use crate::realforms::{self, RealFormClass};
use crate::tol::Tolerances;

/// One of the 15 isolated (totally reducible) characters, indexed by the
/// generator traces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsolatedPoint {
    pub tr_s: C64,
    pub tr_t: C64,
}

impl IsolatedPoint {
    /// A diagonal representative: trace 3 omega^i means the scalar
    /// omega^i Id, trace 0 the regular diagonal diag(1, omega, omega^2).
    pub fn diagonal_rep(&self) -> TwoGenRep {
        let gen_for = |tr: C64| -> ComplexMatrix {
            if tr.norm() < 1e-9 {
                ComplexMatrix::diag(&[ONE, omega_pow(1), omega_pow(2)])
            } else {
                let scalar = tr / 3.0;
                ComplexMatrix::identity(3).scale(scalar)
            }
        };
        TwoGenRep::new(gen_for(self.tr_s), gen_for(self.tr_t), GroupTag::Z3Z3).unwrap()
    }
}

/// The 15 isolated points: (3 omega^i, 3 omega^j) for i, j in {0,1,2}, then
/// (0, 3 omega^j), then (3 omega^i, 0).
pub fn isolated_points() -> Vec<IsolatedPoint> {
    let three = C64::new(3.0, 0.0);
    let mut pts = Vec::with_capacity(15);
    for i in 0..3 {
        for j in 0..3 {
            pts.push(IsolatedPoint { tr_s: three * omega_pow(i), tr_t: three * omega_pow(j) });
        }
    }
    for j in 0..3 {
        pts.push(IsolatedPoint { tr_s: ZERO, tr_t: three * omega_pow(j) });
    }
    for i in 0..3 {
        pts.push(IsolatedPoint { tr_s: three * omega_pow(i), tr_t: ZERO });
    }
    pts
}

/// Index (i, j) of a reducible line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReducibleLine {
    pub i: u8,
    pub j: u8,
}

/// First line (lexicographic in (i, j)) containing (z, w), if any:
/// omega^i z and omega^j w real with omega^i z + omega^j w = 3, at a
/// tolerance scaling with |z| + |w|.
pub fn reducible_line_membership(z: C64, w: C64) -> Option<ReducibleLine> {
    let eps = crate::tol::EPS_LINE * (1.0 + z.norm() + w.norm());
    for i in 0..3u8 {
        let rz = omega_pow(i as i64) * z;
        if rz.im.abs() >= eps {
            continue;
        }
        for j in 0..3u8 {
            let rw = omega_pow(j as i64) * w;
            if rw.im.abs() < eps && (rz + rw - 3.0).norm() < eps {
                return Some(ReducibleLine { i, j });
            }
        }
    }
    None
}

/// All lines through (z, w); the six triple points lie on three each.
pub fn reducible_lines_through(z: C64, w: C64) -> Vec<ReducibleLine> {
    let eps = crate::tol::EPS_LINE * (1.0 + z.norm() + w.norm());
    let mut out = Vec::new();
    for i in 0..3u8 {
        for j in 0..3u8 {
            let rz = omega_pow(i as i64) * z;
            let rw = omega_pow(j as i64) * w;
            if rz.im.abs() < eps && rw.im.abs() < eps && (rz + rw - 3.0).norm() < eps {
                out.push(ReducibleLine { i, j });
            }
        }
    }
    out
}

/// Builds the block representation realizing the point of L^(i,j) with
/// rotated coordinate omega^i z = c (so z = omega^-i c, w = omega^-j (3-c)).
///
/// The SL(2,C) blocks have trace -1 and tr(S'T') = c - 1; the scalar twists
/// omega^(i+j) and omega^(i-j) place the character on the requested line.
pub fn realize_reducible(i: u8, j: u8, c: C64) -> Result<TwoGenRep> {
    assert!(i < 3 && j < 3, "line indices are mod 3");
    if !c.re.is_finite() || !c.im.is_finite() {
        return Err(Error::DegenerateParameter);
    }
    let (sp, tp) = sl2_blocks(c);
    let embed = |b: &ComplexMatrix, scalar: C64| -> ComplexMatrix {
        let mut m = ComplexMatrix::identity(3);
        for r in 0..2 {
            for col in 0..2 {
                m.set(r, col, b.get(r, col));
            }
        }
        m.scale(scalar)
    };
    let s = embed(&sp, omega_pow(i as i64 + j as i64));
    let t = embed(&tp, omega_pow(i as i64 - j as i64));
    TwoGenRep::new(s, t, GroupTag::Z3Z3)
}

/// The order-3 SL(2,C) blocks with tr S' = tr T' = -1, tr(S'T') = c - 1:
/// S' = [[0,-1],[1,-1]], T' = [[a, b],[1, -1-a]] with a^2 = -c and
/// b = c - a - 1 (then det T' = 1 automatically).
fn sl2_blocks(c: C64) -> (ComplexMatrix, ComplexMatrix) {
    let sp = ComplexMatrix::from_rows(&[vec![ZERO, -ONE], vec![ONE, -ONE]]);
    let a = (-c).sqrt();
    let b = c - a - ONE;
    let tp = ComplexMatrix::from_rows(&[vec![a, b], vec![ONE, -ONE - a]]);
    (sp, tp)
}

/// Whether the reducible-line point with rotated coordinate c also lies in
/// the SU(3) character variety: the SL(2) block pair preserves a definite
/// Hermitian form. Requires c real (a Fix point).
pub fn line_point_also_su3(c: f64) -> Result<bool> {
    let (sp, tp) = sl2_blocks(C64::new(c, 0.0));
    // Invariant form of the 2x2 pair: kernel of (S'* X S' - X, T'* X T' - X).
    let mut op = Dense::zeros(8, 4);
    let mut basis = ComplexMatrix::zeros(2);
    let (sa, ta) = (sp.adjoint(), tp.adjoint());
    for col in 0..4 {
        basis.set(col / 2, col % 2, ONE);
        let top = sa.mul(&basis).mul(&sp).sub(&basis);
        let bot = ta.mul(&basis).mul(&tp).sub(&basis);
        for r in 0..2 {
            for cc in 0..2 {
                op.set(r * 2 + cc, col, top.get(r, cc));
                op.set(4 + r * 2 + cc, col, bot.get(r, cc));
            }
        }
        basis.set(col / 2, col % 2, ZERO);
    }
    let kernel = kernel_basis(&op, crate::tol::EPS_RANK);
    if kernel.len() != 1 {
        // Totally reducible configuration (c = 0 or 3): definite forms exist.
        return Ok(kernel.len() > 1);
    }
    let mut p0 = ComplexMatrix::zeros(2);
    for r in 0..2 {
        for cc in 0..2 {
            p0.set(r, cc, kernel[0][r * 2 + cc]);
        }
    }
    let adj = p0.adjoint();
    let mut num = ZERO;
    let mut den = 0.0;
    for r in 0..2 {
        for cc in 0..2 {
            num += p0.get(r, cc).conj() * adj.get(r, cc);
            den += p0.get(r, cc).norm_sqr();
        }
    }
    let mu = num / den;
    let p1 = p0.scale(C64::from_polar(1.0, mu.arg() / 2.0));
    let herm = p1.add(&p1.adjoint()).scale(C64::new(0.5, 0.0));
    let (eigs, _) = linalg::hermitian_eigen(&herm);
    Ok(eigs.iter().all(|&e| e > 0.0) || eigs.iter().all(|&e| e < 0.0))
}

// ---------------------------------------------------------------------------
// Character realization (the inverse problem)
// ---------------------------------------------------------------------------

fn realize_seed(z: C64, w: C64, branch: u8, salt: u64) -> u64 {
    let mut h: u64 = 0x9e37_79b9_7f4a_7c15;
    for bits in [
        z.re.to_bits(),
        z.im.to_bits(),
        w.re.to_bits(),
        w.im.to_bits(),
        branch as u64,
        salt,
    ] {
        h ^= bits;
        h = h.wrapping_mul(0x2545_f491_4f6c_dd1d);
        h ^= h >> 32;
    }
    h
}

fn unit_disc_sample(rng: &mut ChaCha8Rng) -> C64 {
    let r = rng.gen_range(0.0f64..1.0).sqrt();
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    C64::from_polar(r, theta)
}

/// State of one Newton attempt: T = A D A^-1 with A gauge-fixed to first
/// row and column (1,1,1) and four unknown entries.
struct GaugeSolve {
    s: ComplexMatrix,
    sinv: ComplexMatrix,
    targets: [C64; 4],
}

impl GaugeSolve {
    fn assemble(u: &[C64; 4]) -> ComplexMatrix {
        ComplexMatrix::from_rows(&[
            vec![ONE, ONE, ONE],
            vec![ONE, u[0], u[1]],
            vec![ONE, u[2], u[3]],
        ])
    }

    /// Residuals (tr ST - z, tr (ST)^-1 - conj z, tr ST^-1 - w,
    /// tr TS^-1 - conj w) and their complex Jacobian.
    fn residual_jacobian(&self, u: &[C64; 4]) -> Option<([C64; 4], Dense)> {
        let d = ComplexMatrix::diag(&[ONE, omega_pow(1), omega_pow(2)]);
        let a = Self::assemble(u);
        if a.det().norm() < 1e-10 {
            return None;
        }
        let ainv = a.inverse().ok()?;
        let t = a.mul(&d).mul(&ainv);
        let tinv = a.mul(&ComplexMatrix::diag(&[ONE, omega_pow(2), omega_pow(1)])).mul(&ainv);
        let s = &self.s;
        let sinv = &self.sinv;

        let r = [
            s.mul(&t).trace() - self.targets[0],
            tinv.mul(sinv).trace() - self.targets[1],
            s.mul(&tinv).trace() - self.targets[2],
            t.mul(sinv).trace() - self.targets[3],
        ];

        // dT = E D A^-1 - T E A^-1 for the elementary matrix E of each
        // unknown, dT^-1 = -T^-1 dT T^-1; trace derivatives by cyclicity.
        let positions = [(1, 1), (1, 2), (2, 1), (2, 2)];
        let mut jac = Dense::zeros(4, 4);
        for (col, &(ei, ej)) in positions.iter().enumerate() {
            let mut e = ComplexMatrix::zeros(3);
            e.set(ei, ej, ONE);
            let dt = e.mul(&d).mul(&ainv).sub(&t.mul(&e).mul(&ainv));
            let dtinv = tinv.mul(&dt).mul(&tinv).scale(-ONE);
            jac.set(0, col, s.mul(&dt).trace());
            jac.set(1, col, dtinv.mul(sinv).trace());
            jac.set(2, col, s.mul(&dtinv).trace());
            jac.set(3, col, dt.mul(sinv).trace());
        }
        Some((r, jac))
    }
}

fn res_norm(r: &[C64; 4]) -> f64 {
    r.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// Realizes a character of X0 with coordinates (z, conj z, w, conj w) and
/// commutator trace equal to the branch root of X^2 - Q X + P, as a pair
/// S = diag(1, omega, omega^2) (re-gauged on late attempts), T = A D A^-1.
///
/// Damped Newton iteration on the four gauge-fixed entries of A; restarts
/// are seeded deterministically from (z, w, branch, attempt).
pub fn realize_character(z: C64, w: C64, branch: u8, tols: Tolerances) -> Result<TwoGenRep> {
    if reducible_line_membership(z, w).is_some() {
        return Err(Error::OnReducibleLocus);
    }
    let (x0, x1) = x_roots(z, w);
    let x_target = if branch == 0 { x0 } else { x1 };
    let targets = [z, z.conj(), w, w.conj()];
    let d = ComplexMatrix::diag(&[ONE, omega_pow(1), omega_pow(2)]);

    let mut best = f64::INFINITY;
    for attempt in 0..tols.max_restarts {
        // Late attempts re-gauge the eigenbasis of S by a random unitary to
        // escape singular gauges (true solutions with zeros in the pinned
        // row or column of A).
        let (s, sinv) = if attempt < tols.max_restarts / 2 {
            (d.clone(), ComplexMatrix::diag(&[ONE, omega_pow(2), omega_pow(1)]))
        } else {
            let mut gauge_rng =
                ChaCha8Rng::seed_from_u64(realize_seed(z, w, branch, 0xa11c + attempt as u64));
            let u = crate::sampling::random_unitary(3, &mut gauge_rng);
            let s = u.mul(&d).mul(&u.adjoint());
            let sinv = u
                .mul(&ComplexMatrix::diag(&[ONE, omega_pow(2), omega_pow(1)]))
                .mul(&u.adjoint());
            (s, sinv)
        };
        let solver = GaugeSolve { s, sinv, targets };

        let mut rng = ChaCha8Rng::seed_from_u64(realize_seed(z, w, branch, attempt as u64));
        let mut u = [
            unit_disc_sample(&mut rng),
            unit_disc_sample(&mut rng),
            unit_disc_sample(&mut rng),
            unit_disc_sample(&mut rng),
        ];

        let Some(mut state) = solver.residual_jacobian(&u) else { continue };
        let mut converged = false;
        for _iter in 0..120 {
            let (r, jac) = &state;
            let rn = res_norm(r);
            if rn < 1e-12 {
                converged = true;
                break;
            }
            let Ok(jinv) = jac.inverse() else { break };
            let rhs: Vec<C64> = r.to_vec();
            let step_full = jinv.mul_vec(&rhs);
            // Damping: halve until the residual decreases.
            let mut lambda = 1.0f64;
            let mut accepted = None;
            for _halve in 0..40 {
                let trial = [
                    u[0] - step_full[0] * lambda,
                    u[1] - step_full[1] * lambda,
                    u[2] - step_full[2] * lambda,
                    u[3] - step_full[3] * lambda,
                ];
                if let Some(next) = solver.residual_jacobian(&trial) {
                    if res_norm(&next.0) < rn {
                        accepted = Some((trial, next));
                        break;
                    }
                }
                lambda /= 2.0;
            }
            let Some((trial, next)) = accepted else { break };
            let step: f64 =
                step_full.iter().map(|v| (v * lambda).norm_sqr()).sum::<f64>().sqrt();
            u = trial;
            state = next;
            if step < 1e-12 {
                converged = res_norm(&state.0) < tols.realize;
                break;
            }
        }
        let final_res = res_norm(&state.0);
        best = best.min(final_res);
        if !(converged || final_res < tols.realize) {
            continue;
        }
        let a = GaugeSolve::assemble(&u);
        let Ok(ainv) = a.inverse() else { continue };
        let t = a.mul(&d).mul(&ainv);
        let Ok(rep) = TwoGenRep::new(solver.s.clone(), t, GroupTag::Z3Z3) else { continue };
        // Branch check: the commutator trace must match the requested root.
        let x = crate::groups::evaluate(&rep, &crate::groups::Word::parse("stST").unwrap()).trace();
        if (x - x_target).norm() < 1e-6 * (1.0 + x_target.norm()) {
            return Ok(rep);
        }
    }
    Err(Error::NoConvergence { attempts: tols.max_restarts, best })
}

// ---------------------------------------------------------------------------
// Character-level classification
// ---------------------------------------------------------------------------

/// Classification of a point of the (z, w) coordinate plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharClass {
    SU3,
    SU21,
    ReducibleLinePoint(u8, u8),
    OutsideFix,
    IsolatedTotallyReducible,
}

impl std::fmt::Display for CharClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CharClass::SU3 => write!(f, "SU(3)"),
            CharClass::SU21 => write!(f, "SU(2,1)"),
            CharClass::ReducibleLinePoint(i, j) => write!(f, "reducible line L({i},{j})"),
            CharClass::OutsideFix => write!(f, "outside Fix(Phi2)"),
            CharClass::IsolatedTotallyReducible => write!(f, "isolated totally reducible"),
        }
    }
}

fn classify_branch(z: C64, w: C64, branch: u8, tols: Tolerances) -> Result<CharClass> {
    // A 3x3 unitary trace has modulus at most 3: SU(3) is excluded outright
    // for large coordinates and the expensive realization can be skipped.
    if z.norm() > 3.0 + 1e-9 || w.norm() > 3.0 + 1e-9 {
        return Ok(CharClass::SU21);
    }
    let rep = realize_character(z, w, branch, tols)
        .map_err(|e| Error::UnresolvedPoint(z, w, format!("realization failed: {e}")))?;
    let verdict = realforms::realize_phi2(&rep)
        .map_err(|e| Error::UnresolvedPoint(z, w, format!("signature failed: {e}")))?;
    match verdict.class {
        RealFormClass::SUpq(3, 0) => Ok(CharClass::SU3),
        RealFormClass::SUpq(2, 1) => Ok(CharClass::SU21),
        other => Err(Error::UnresolvedPoint(
            z,
            w,
            format!("unexpected class {other:?} at dimension 3"),
        )),
    }
}

/// Classifies the characters over (z, w): outside the fixed locus, on a
/// reducible line, or SU(3) / SU(2,1) per branch of the commutator trace.
/// On the Delta = 0 boundary off the lines the branches coincide and a
/// single class is returned.
pub fn classify_character(
    z: C64,
    w: C64,
    tols: Tolerances,
) -> Result<(CharClass, Option<CharClass>)> {
    match fix_phi2_membership(z, w) {
        Membership::Outside => return Ok((CharClass::OutsideFix, None)),
        Membership::Boundary => {
            if let Some(line) = reducible_line_membership(z, w) {
                return Ok((CharClass::ReducibleLinePoint(line.i, line.j), None));
            }
            return Ok((classify_branch(z, w, 0, tols)?, None));
        }
        Membership::Inside => {}
    }
    if let Some(line) = reducible_line_membership(z, w) {
        return Ok((CharClass::ReducibleLinePoint(line.i, line.j), None));
    }
    let c0 = classify_branch(z, w, 0, tols)?;
    let c1 = classify_branch(z, w, 1, tols)?;
    Ok((c0, Some(c1)))
}

// ---------------------------------------------------------------------------
// Smoothness: rank of the defining Jacobian on the real locus
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JacobianRank {
    Rank1,
    Rank2,
}

/// Real 2x6 Jacobian of f = (Q - x - conj x, P - x conj x) at (z, w, x) in
/// the variables (Re z, Im z, Re w, Im w, Re x, Im x), assembled from the
/// Wirtinger partials.
pub fn jacobian_matrix(z: C64, w: C64, x: C64) -> [[f64; 6]; 2] {
    // f1: d/dz = conj z, d/dw = conj w, d/dx = -1.
    let row1 = [2.0 * z.re, 2.0 * z.im, 2.0 * w.re, 2.0 * w.im, -2.0, 0.0];
    // f2: d/dz = 3 z^2 + conj z (|w|^2 - 6), d/dw symmetric, d/dx = -conj x.
    let dz = 3.0 * z * z + z.conj() * (w.norm_sqr() - 6.0);
    let dw = 3.0 * w * w + w.conj() * (z.norm_sqr() - 6.0);
    let row2 = [
        2.0 * dz.re,
        -2.0 * dz.im,
        2.0 * dw.re,
        -2.0 * dw.im,
        -2.0 * x.re,
        -2.0 * x.im,
    ];
    [row1, row2]
}

/// Rank of the Jacobian at a point of Fix(Phi2) on X0: rank 1 exactly at
/// the reducible characters, rank 2 at the smooth (irreducible) ones.
pub fn jacobian_rank(z: C64, w: C64, x: C64) -> Result<JacobianRank> {
    RealX0Point { z, w, x }.validate()?;
    let rows = jacobian_matrix(z, w, x);
    // 6x2 stack (tall) for the one-sided SVD.
    let mut m = Dense::zeros(6, 2);
    for (r, row) in rows.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            m.set(c, r, C64::new(v, 0.0));
        }
    }
    match linalg::rank(&m, crate::tol::EPS_RANK) {
        0 | 1 => Ok(JacobianRank::Rank1),
        _ => Ok(JacobianRank::Rank2),
    }
}

// ---------------------------------------------------------------------------
// Figure-eight generator bridge
// ---------------------------------------------------------------------------

/// Converts a triple (G1, G2, G3) satisfying the figure-eight-group
/// relations G1 G2 = G2 G3 and G2 = [G3, G1^-1] into the Z/3 * Z/3 pair
/// T = (G1 G2)^-1, S = G1^2 G2. The recovery identities G1 = ST, G3 = TS
/// are re-checked on the way out.
pub fn gamma8_to_z3z3(
    g1: &ComplexMatrix,
    g2: &ComplexMatrix,
    g3: &ComplexMatrix,
) -> Result<TwoGenRep> {
    let scale = 1.0 + g1.norm_inf().max(g2.norm_inf()).max(g3.norm_inf());
    let rel1 = g1.mul(g2).sub(&g2.mul(g3)).norm_inf();
    let comm = g3.mul(&g1.inverse()?).mul(&g3.inverse()?).mul(g1);
    let rel2 = g2.sub(&comm).norm_inf();
    if rel1 >= 1e-8 * scale || rel2 >= 1e-8 * scale {
        return Err(Error::RelationViolated(rel1.max(rel2)));
    }
    let s = g1.mul(g1).mul(g2);
    let t = g1.mul(g2).inverse()?;
    let id = ComplexMatrix::identity(3);
    for m in [&s, &t] {
        if m.mul(m).mul(m).sub(&id).norm_inf() >= 1e-7 {
            return Err(Error::NotOrderThree);
        }
    }
    let rec1 = s.mul(&t).sub(g1).norm_inf();
    let rec3 = t.mul(&s).sub(g3).norm_inf();
    if rec1 >= 1e-8 * scale || rec3 >= 1e-8 * scale {
        return Err(Error::RelationViolated(rec1.max(rec3)));
    }
    TwoGenRep::new(s, t, GroupTag::Z3Z3)
}

/// Convenience: the (z, w, x) coordinates of a realized representation.
pub fn slice_coords(rep: &TwoGenRep) -> Result<(C64, C64, C64)> {
    let p = x0_from_tuple(&coords_from_rep(rep))?;
    Ok((p.z, p.w, p.x))
}

pub use charcoords::x_roots as commutator_roots;
