//! Words on two generators, evaluation under a representation, and the
//! order/relation checks used for Z/3 * Z/3.

use crate::error::{Error, Result};
use crate::linalg::{omega_pow, ComplexMatrix, ONE};
use crate::tol;

/// The two generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    S,
    T,
}

/// Which group a two-generator representation targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupTag {
    F2,
    Z3Z3,
}

/// A reduced word: adjacent letters have distinct generators, exponents are
/// nonzero. Reduction happens on construction.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word {
    letters: Vec<(Gen, i64)>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn letter(g: Gen, e: i64) -> Self {
        let mut w = Word::empty();
        w.push(g, e);
        w
    }

    /// Word from a list of (generator, exponent) syllables; reduces.
    pub fn from_letters(letters: &[(Gen, i64)]) -> Self {
        let mut w = Word::empty();
        for &(g, e) in letters {
            w.push(g, e);
        }
        w
    }

    /// Parses the CLI syntax: a string over {s, t, S, T}, uppercase meaning
    /// the inverse letter, read left to right. "stST" is the commutator
    /// [s,t].
    pub fn parse(text: &str) -> Result<Self> {
        let mut w = Word::empty();
        for ch in text.chars() {
            match ch {
                's' => w.push(Gen::S, 1),
                'S' => w.push(Gen::S, -1),
                't' => w.push(Gen::T, 1),
                'T' => w.push(Gen::T, -1),
                c if c.is_whitespace() => {}
                c => return Err(Error::Usage(format!("invalid word letter {c:?}"))),
            }
        }
        Ok(w)
    }

    fn push(&mut self, g: Gen, e: i64) {
        if e == 0 {
            return;
        }
        match self.letters.last_mut() {
            Some((lg, le)) if *lg == g => {
                *le += e;
                if *le == 0 {
                    self.letters.pop();
                }
            }
            _ => self.letters.push((g, e)),
        }
    }

    pub fn letters(&self) -> &[(Gen, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &other.letters {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        let mut w = Word::empty();
        for &(g, e) in self.letters.iter().rev() {
            w.push(g, -e);
        }
        w
    }

    /// The commutator a b a^-1 b^-1 of two words.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for &(g, e) in &self.letters {
            let (low, up) = match g {
                Gen::S => ('s', 'S'),
                Gen::T => ('t', 'T'),
            };
            let ch = if e > 0 { low } else { up };
            for _ in 0..e.unsigned_abs() {
                write!(f, "{ch}")?;
            }
        }
        Ok(())
    }
}

/// A two-generator representation: the images (S, T) of the generators.
#[derive(Debug, Clone)]
pub struct TwoGenRep {
    pub s: ComplexMatrix,
    pub t: ComplexMatrix,
    pub group: GroupTag,
}

impl TwoGenRep {
    /// Validates determinants (and, for Z3Z3, the order-3 relations).
    pub fn new(s: ComplexMatrix, t: ComplexMatrix, group: GroupTag) -> Result<Self> {
        assert_eq!(s.dim(), t.dim(), "generator dimensions differ");
        if !s.is_finite() || !t.is_finite() {
            return Err(Error::NonFiniteEntries);
        }
        for m in [&s, &t] {
            let dev = (m.det() - ONE).norm();
            if dev >= tol::EPS_DET {
                return Err(Error::DeterminantNotOne(dev));
            }
        }
        if group == GroupTag::Z3Z3 {
            for m in [&s, &t] {
                let cube = m.mul(m).mul(m);
                if cube.sub(&ComplexMatrix::identity(m.dim())).norm_inf() >= tol::EPS_ORDER3 {
                    return Err(Error::NotOrderThree);
                }
            }
        }
        Ok(TwoGenRep { s, t, group })
    }

    pub fn dim(&self) -> usize {
        self.s.dim()
    }

    /// The representation g -> conj(rho(g)).
    pub fn conjugated(&self) -> TwoGenRep {
        TwoGenRep { s: self.s.conj(), t: self.t.conj(), group: self.group }
    }

    /// The representation g -> conj(t(rho(g)))^-1 (the Phi2 twist).
    pub fn phi2_twisted(&self) -> Result<TwoGenRep> {
        Ok(TwoGenRep {
            s: self.s.adjoint().inverse()?,
            t: self.t.adjoint().inverse()?,
            group: self.group,
        })
    }

    /// Conjugated representation h rho h^-1.
    pub fn conjugate_by(&self, h: &ComplexMatrix) -> Result<TwoGenRep> {
        let hinv = h.inverse()?;
        Ok(TwoGenRep {
            s: h.mul(&self.s).mul(&hinv),
            t: h.mul(&self.t).mul(&hinv),
            group: self.group,
        })
    }
}

/// Evaluates a reduced word under the representation: the ordered product of
/// generator powers, negative exponents through the inverse images.
pub fn evaluate(rep: &TwoGenRep, word: &Word) -> ComplexMatrix {
    let n = rep.dim();
    let sinv = rep.s.inverse().expect("generator image is invertible");
    let tinv = rep.t.inverse().expect("generator image is invertible");
    let mut acc = ComplexMatrix::identity(n);
    for &(g, e) in word.letters() {
        let base = match (g, e >= 0) {
            (Gen::S, true) => &rep.s,
            (Gen::S, false) => &sinv,
            (Gen::T, true) => &rep.t,
            (Gen::T, false) => &tinv,
        };
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(base);
        }
    }
    acc
}

/// Outcome of the order-three test on a matrix in SL(3,C): either a scalar
/// cube root of unity, or vanishing traces of M and M^-1, or neither.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderThree {
    ScalarOmega(u8),
    TraceCriterion,
    NotOrderThree,
}

/// Order-3 test: M^3 = I holds exactly when M is a scalar cube root of
/// unity or tr M = tr M^-1 = 0.
pub fn is_order_three(m: &ComplexMatrix) -> Result<OrderThree> {
    assert_eq!(m.dim(), 3, "order-three test is specific to dimension 3");
    let dev = (m.det() - ONE).norm();
    if dev >= tol::EPS_DET {
        return Err(Error::DeterminantNotOne(dev));
    }
    for i in 0..3u8 {
        let target = ComplexMatrix::identity(3).scale(omega_pow(i as i64));
        if m.sub(&target).norm_inf() < tol::EPS_ORDER3 {
            assert_cube_is_identity(m);
            return Ok(OrderThree::ScalarOmega(i));
        }
    }
    let tr = m.trace();
    let trinv = m.inverse()?.trace();
    if tr.norm() < tol::EPS_ORDER3 && trinv.norm() < tol::EPS_ORDER3 {
        assert_cube_is_identity(m);
        return Ok(OrderThree::TraceCriterion);
    }
    Ok(OrderThree::NotOrderThree)
}

fn assert_cube_is_identity(m: &ComplexMatrix) {
    let res = m.mul(m).mul(m).sub(&ComplexMatrix::identity(3)).norm_inf();
    assert!(res < tol::EPS_CUBE, "order-3 criterion matched but ||M^3 - I|| = {res:.3e}");
}

/// Residual of the SL(2,C) trace identity
/// tr(S) tr(T) = tr(ST) + tr(ST^-1); vanishes for every pair in SL(2,C).
pub fn sl2_trace_identity_residual(s2: &ComplexMatrix, t2: &ComplexMatrix) -> Result<f64> {
    assert_eq!(s2.dim(), 2);
    assert_eq!(t2.dim(), 2);
    for m in [s2, t2] {
        let dev = (m.det() - ONE).norm();
        if dev >= tol::EPS_DET {
            return Err(Error::DeterminantNotOne(dev));
        }
    }
    let lhs = s2.trace() * t2.trace();
    let rhs = s2.mul(t2).trace() + s2.mul(&t2.inverse()?).trace();
    Ok((lhs - rhs).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{omega, ZERO};
    use num_complex::Complex64 as C64;
    use crate::sampling;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn word_reduction_and_parse() {
        let w = Word::parse("stST").unwrap();
        assert_eq!(w.letters().len(), 4);
        let cancel = Word::parse("sS").unwrap();
        assert!(cancel.is_empty());
        let merged = Word::parse("sstt").unwrap();
        assert_eq!(merged.letters(), &[(Gen::S, 2), (Gen::T, 2)]);
        assert_eq!(Word::parse("stST").unwrap().to_string(), "stST");
        assert!(Word::parse("x").is_err());
    }

    #[test]
    fn evaluate_basics() {
        let mut rng = StdRng::seed_from_u64(11);
        let rep = sampling::random_sl3_pair(&mut rng);
        assert_eq!(
            evaluate(&rep, &Word::empty()).sub(&ComplexMatrix::identity(3)).norm_inf(),
            0.0
        );
        let st = evaluate(&rep, &Word::parse("st").unwrap());
        assert!(st.sub(&rep.s.mul(&rep.t)).norm_inf() < 1e-12);
    }

    #[test]
    fn evaluate_is_multiplicative() {
        let mut rng = StdRng::seed_from_u64(12);
        for _ in 0..50 {
            let rep = sampling::random_sl3_pair(&mut rng);
            let w1 = Word::parse("stS").unwrap();
            let w2 = Word::parse("sTt").unwrap();
            let lhs = evaluate(&rep, &w1.concat(&w2));
            let rhs = evaluate(&rep, &w1).mul(&evaluate(&rep, &w2));
            assert!(lhs.sub(&rhs).norm_inf() < 1e-10);
        }
    }

    #[test]
    fn z3z3_reps_kill_cubes() {
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..20 {
            let rep = sampling::random_order3_pair(&mut rng);
            for word in ["sss", "ttt"] {
                let m = evaluate(&rep, &Word::parse(word).unwrap());
                assert!(m.sub(&ComplexMatrix::identity(3)).norm_inf() < 1e-7);
            }
        }
    }

    #[test]
    fn order_three_cases() {
        let id = ComplexMatrix::identity(3);
        assert_eq!(is_order_three(&id.scale(omega())).unwrap(), OrderThree::ScalarOmega(1));
        let d = ComplexMatrix::diag(&[ONE, omega(), omega_pow(2)]);
        assert_eq!(is_order_three(&d).unwrap(), OrderThree::TraceCriterion);
        let not = ComplexMatrix::diag(&[
            C64::new(2.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(0.5, 0.0),
        ]);
        assert_eq!(is_order_three(&not).unwrap(), OrderThree::NotOrderThree);
    }

    #[test]
    fn order_three_iff_cube_is_identity() {
        // Diagonalizable matrices with eigenvalues drawn from cube roots of
        // unity and generic values: the criterion agrees with M^3 = I.
        let mut rng = StdRng::seed_from_u64(14);
        let mut seen_order3 = 0;
        for _ in 0..1000 {
            let m = sampling::random_diag_mixed_spectrum(&mut rng);
            let cube_res = m.mul(&m).mul(&m).sub(&ComplexMatrix::identity(3)).norm_inf();
            let verdict = is_order_three(&m).unwrap();
            let claimed = verdict != OrderThree::NotOrderThree;
            assert_eq!(claimed, cube_res < tol::EPS_CUBE, "cube residual {cube_res:.3e}");
            if claimed {
                seen_order3 += 1;
            }
        }
        assert!(seen_order3 > 50, "sampler produced too few order-3 cases");
    }

    #[test]
    fn sl2_identity_holds() {
        let id = ComplexMatrix::identity(2);
        assert!(sl2_trace_identity_residual(&id, &id).unwrap() < 1e-15);

        // Order-3 element of SL(2,C) with trace -1, paired with itself.
        let s2 = ComplexMatrix::from_rows(&[
            vec![ZERO, -ONE],
            vec![ONE, -ONE],
        ]);
        assert!(sl2_trace_identity_residual(&s2, &s2).unwrap() < 1e-12);

        let mut rng = StdRng::seed_from_u64(15);
        for _ in 0..200 {
            let a = sampling::random_sl(2, &mut rng);
            let b = sampling::random_sl(2, &mut rng);
            assert!(sl2_trace_identity_residual(&a, &b).unwrap() < 1e-9);
        }
    }
}
