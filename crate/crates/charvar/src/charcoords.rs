//! Trace coordinates for F2 and for the four-dimensional component X0 of
//! the SL(3,C)-character variety of Z/3 * Z/3.
//!
//! The ten-field tuple carries the traces at s, t, st, st^-1, s^-1, t^-1,
//! t^-1 s^-1, t s^-1, [s,t] and [t,s]; the tenth field makes the involution
//! `phi2` closed-form. On X0 the commutator trace satisfies
//!
//!   x^2 - (z z' + w w' - 3) x
//!       + (z z' w w' + z^3 + z'^3 + w^3 + w'^3 - 6 z z' - 6 w w' + 9) = 0,
//!
//! and on the real slice (z' = conj z, w' = conj w) this becomes
//! x + conj x = Q(z,w), x conj x = P(z,w) with the discriminant Delta.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::groups::{evaluate, TwoGenRep, Word};
use crate::tol;

/// The ten trace coordinates of a two-generator representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceTuple {
    /// Traces at s, t, st, st^-1, s^-1, t^-1, t^-1 s^-1, t s^-1, [s,t], [t,s].
    pub x: [C64; 10],
}

impl TraceTuple {
    pub fn words() -> [Word; 10] {
        [
            Word::parse("s").unwrap(),
            Word::parse("t").unwrap(),
            Word::parse("st").unwrap(),
            Word::parse("sT").unwrap(),
            Word::parse("S").unwrap(),
            Word::parse("T").unwrap(),
            Word::parse("TS").unwrap(),
            Word::parse("tS").unwrap(),
            Word::parse("stST").unwrap(),
            Word::parse("tsTS").unwrap(),
        ]
    }

    pub fn max_deviation(&self, other: &TraceTuple) -> f64 {
        self.x
            .iter()
            .zip(&other.x)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// All ten traces of the representation, by explicit word evaluation.
pub fn coords_from_rep(rep: &TwoGenRep) -> TraceTuple {
    let words = TraceTuple::words();
    let mut x = [C64::new(0.0, 0.0); 10];
    for (xi, w) in x.iter_mut().zip(words.iter()) {
        *xi = evaluate(rep, w).trace();
    }
    TraceTuple { x }
}

/// Conjugates every trace: the coordinate action of A -> conj A.
pub fn phi1(t: &TraceTuple) -> TraceTuple {
    let mut x = t.x;
    for v in x.iter_mut() {
        *v = v.conj();
    }
    TraceTuple { x }
}

/// Swaps each trace with the conjugate of its inverse-word partner:
/// the coordinate action of A -> conj(t(A))^-1.
pub fn phi2(t: &TraceTuple) -> TraceTuple {
    let x = &t.x;
    TraceTuple {
        x: [
            x[4].conj(), // s       <- conj tr(s^-1)
            x[5].conj(), // t       <- conj tr(t^-1)
            x[6].conj(), // st      <- conj tr((st)^-1)
            x[7].conj(), // st^-1   <- conj tr(ts^-1)
            x[0].conj(),
            x[1].conj(),
            x[2].conj(),
            x[3].conj(),
            x[9].conj(), // [s,t]   <- conj tr([t,s])
            x[8].conj(),
        ],
    }
}

/// A point of the component X0: traces of st, (st)^-1, st^-1, ts^-1, [s,t].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct X0Point {
    pub z: C64,
    pub zp: C64,
    pub w: C64,
    pub wp: C64,
    pub x: C64,
}

impl X0Point {
    /// Residual of the defining relation, scaled by 1 + |x|^2.
    pub fn relation_residual(&self) -> f64 {
        let (z, zp, w, wp, x) = (self.z, self.zp, self.w, self.wp, self.x);
        let q = z * zp + w * wp - 3.0;
        let p = z * zp * w * wp + z.powu(3) + zp.powu(3) + w.powu(3) + wp.powu(3)
            - 6.0 * z * zp
            - 6.0 * w * wp
            + 9.0;
        (x * x - q * x + p).norm() / (1.0 + x.norm_sqr())
    }
}

/// Projects a trace tuple onto X0 coordinates. Requires order-3 non-scalar
/// generators (vanishing traces of s, t and their inverses) and checks the
/// degree-2 relation.
pub fn x0_from_tuple(t: &TraceTuple) -> Result<X0Point> {
    for k in [0usize, 1, 4, 5] {
        if t.x[k].norm() >= 1e-6 {
            return Err(Error::NotInX0);
        }
    }
    let p = X0Point { z: t.x[2], zp: t.x[6], w: t.x[3], wp: t.x[7], x: t.x[8] };
    let res = p.relation_residual();
    if res >= tol::EPS_X0 {
        return Err(Error::RelationViolated(res));
    }
    Ok(p)
}

/// Q(z,w) = |z|^2 + |w|^2 - 3.
pub fn q_of(z: C64, w: C64) -> f64 {
    z.norm_sqr() + w.norm_sqr() - 3.0
}

/// P(z,w) = 2 Re(z^3) + 2 Re(w^3) + |z|^2 |w|^2 - 6|z|^2 - 6|w|^2 + 9.
pub fn p_of(z: C64, w: C64) -> f64 {
    2.0 * z.powu(3).re + 2.0 * w.powu(3).re + z.norm_sqr() * w.norm_sqr()
        - 6.0 * z.norm_sqr()
        - 6.0 * w.norm_sqr()
        + 9.0
}

/// Goldman's trace classifier f(z) = |z|^4 - 8 Re(z^3) + 18 |z|^2 - 27.
pub fn goldman_f(z: C64) -> f64 {
    z.norm_sqr() * z.norm_sqr() - 8.0 * z.powu(3).re + 18.0 * z.norm_sqr() - 27.0
}

/// Discriminant of X^2 - Q X + P on the real slice:
/// Delta(z,w) = f(z) + f(w) - 2 |z|^2 |w|^2 + 27.
pub fn delta(z: C64, w: C64) -> f64 {
    goldman_f(z) + goldman_f(w) - 2.0 * z.norm_sqr() * w.norm_sqr() + 27.0
}

/// The two roots of X^2 - Q(z,w) X + P(z,w); the first has nonnegative
/// imaginary part (branch 0).
pub fn x_roots(z: C64, w: C64) -> (C64, C64) {
    let q = q_of(z, w);
    let d = delta(z, w);
    let half = C64::new(q / 2.0, 0.0);
    if d <= 0.0 {
        let im = (-d).sqrt() / 2.0;
        (half + C64::new(0.0, im), half - C64::new(0.0, im))
    } else {
        let re = d.sqrt() / 2.0;
        (half + re, half - re)
    }
}

/// Position relative to the fixed locus of Phi2 on X0: the sign of Delta,
/// with a boundary band scaling like the degree of Delta.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Inside,
    Boundary,
    Outside,
}

pub fn fix_phi2_membership(z: C64, w: C64) -> Membership {
    let d = delta(z, w);
    let eps = tol::EPS_DELTA * (1.0 + z.norm_sqr().powi(2) + w.norm_sqr().powi(2));
    if d < -eps {
        Membership::Inside
    } else if d <= eps {
        Membership::Boundary
    } else {
        Membership::Outside
    }
}

/// A point of Fix(Phi2) on X0 in the slice coordinates (z, w, x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealX0Point {
    pub z: C64,
    pub w: C64,
    pub x: C64,
}

impl RealX0Point {
    /// Checks Delta <= 0 and the pair of real equations
    /// x + conj x = Q, x conj x = P (relative tolerance).
    pub fn validate(&self) -> Result<()> {
        let (z, w, x) = (self.z, self.w, self.x);
        if delta(z, w) > tol::EPS_X0 * (1.0 + z.norm_sqr().powi(2) + w.norm_sqr().powi(2)) {
            return Err(Error::NotOnX0);
        }
        let q = q_of(z, w);
        let p = p_of(z, w);
        let r1 = (2.0 * x.re - q).abs() / (1.0 + q.abs());
        let r2 = (x.norm_sqr() - p).abs() / (1.0 + p.abs());
        if r1 >= tol::EPS_X0 || r2 >= tol::EPS_X0 {
            return Err(Error::NotOnX0);
        }
        Ok(())
    }
}
