//! Seeded random generators for matrices and representations: SL(n,C),
//! SU(n), SU(2,1), SL(3,R), SL(2,H) and the order-3 pairs of the Z/3 * Z/3
//! example. Everything is driven by a caller-provided RNG so suites are
//! reproducible.

use num_complex::Complex64 as C64;
use rand::Rng;

use crate::groups::{GroupTag, TwoGenRep};
use crate::linalg::{omega_pow, ComplexMatrix, ONE, ZERO};

pub fn random_complex<R: Rng>(rng: &mut R, radius: f64) -> C64 {
    C64::new(rng.gen_range(-radius..radius), rng.gen_range(-radius..radius))
}

fn random_matrix<R: Rng>(n: usize, rng: &mut R) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, random_complex(rng, 1.0));
        }
    }
    m
}

/// Random element of SL(n,C) with entries of moderate size.
pub fn random_sl<R: Rng>(n: usize, rng: &mut R) -> ComplexMatrix {
    loop {
        let m = random_matrix(n, rng);
        if m.det().norm() > 1e-2 {
            return m.normalize_det().unwrap();
        }
    }
}

/// Random element of SU(n): Gram-Schmidt of a random matrix, det-normalized.
pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> ComplexMatrix {
    'outer: loop {
        let m = random_matrix(n, rng);
        let mut cols: Vec<Vec<C64>> =
            (0..n).map(|j| (0..n).map(|i| m.get(i, j)).collect()).collect();
        for j in 0..n {
            for k in 0..j {
                let proj: C64 = (0..n).map(|i| cols[k][i].conj() * cols[j][i]).sum();
                for i in 0..n {
                    let v = cols[k][i];
                    cols[j][i] -= proj * v;
                }
            }
            let norm: f64 = cols[j].iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-3 {
                continue 'outer;
            }
            for v in cols[j].iter_mut() {
                *v /= norm;
            }
        }
        let mut u = ComplexMatrix::zeros(n);
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                u.set(i, j, v);
            }
        }
        return u.normalize_det().unwrap();
    }
}

/// Random element of SU(2,1): Gram-Schmidt with respect to the indefinite
/// form u* I_{2,1} v, columns ordered positive-positive-negative.
pub fn random_su21<R: Rng>(rng: &mut R) -> ComplexMatrix {
    let i21 = ComplexMatrix::i_pq(2, 1);
    let form = |u: &[C64], v: &[C64]| -> C64 {
        u[0].conj() * v[0] + u[1].conj() * v[1] - u[2].conj() * v[2]
    };
    'outer: loop {
        let mut vecs: Vec<Vec<C64>> = Vec::new();
        let mut signs: Vec<f64> = Vec::new();
        for _ in 0..3 {
            let mut v: Vec<C64> = (0..3).map(|_| random_complex(rng, 1.0)).collect();
            for (u, &sgn) in vecs.iter().zip(&signs) {
                let c = form(u, &v) * sgn;
                for i in 0..3 {
                    v[i] -= c * u[i];
                }
            }
            let q = form(&v, &v).re;
            // Keep away from the null cone so the basis stays well
            // conditioned after rescaling.
            let nv: f64 = v.iter().map(|x| x.norm_sqr()).sum();
            if q.abs() < 0.2 * nv || nv < 1e-2 {
                continue 'outer;
            }
            let scale = q.abs().sqrt();
            for x in v.iter_mut() {
                *x /= scale;
            }
            signs.push(q.signum());
            vecs.push(v);
        }
        let mut order: Vec<usize> = (0..3).collect();
        order.sort_by(|&a, &b| signs[b].partial_cmp(&signs[a]).unwrap());
        let pos = signs.iter().filter(|&&s| s > 0.0).count();
        if pos != 2 {
            continue 'outer;
        }
        let mut u = ComplexMatrix::zeros(3);
        for (j, &oj) in order.iter().enumerate() {
            for i in 0..3 {
                u.set(i, j, vecs[oj][i]);
            }
        }
        debug_assert!(u.adjoint().mul(&i21).mul(&u).sub(&i21).norm_inf() < 1e-9);
        return u.normalize_det().unwrap();
    }
}

/// Random element of SL(3,R).
pub fn random_sl3r<R: Rng>(rng: &mut R) -> ComplexMatrix {
    loop {
        let mut m = ComplexMatrix::zeros(3);
        for i in 0..3 {
            for j in 0..3 {
                m.set(i, j, C64::new(rng.gen_range(-1.0..1.0), 0.0));
            }
        }
        let d = m.det().re;
        if d.abs() > 1e-2 {
            // Real cube root keeps the entries real.
            let root = d.signum() * d.abs().powf(1.0 / 3.0);
            return m.scale(ONE / root);
        }
    }
}

/// Embeds a 2x2 quaternionic matrix given as (A, B) with Q = A + Bj into
/// SL(4,C) as [[A, B], [-conj B, conj A]].
fn quaternionic_embed(a: &[[C64; 2]; 2], b: &[[C64; 2]; 2]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4);
    for i in 0..2 {
        for j in 0..2 {
            m.set(i, j, a[i][j]);
            m.set(i, j + 2, b[i][j]);
            m.set(i + 2, j, -b[i][j].conj());
            m.set(i + 2, j + 2, a[i][j].conj());
        }
    }
    m
}

/// Random element of SL(2,H) embedded in SL(4,C); satisfies
/// conj(M)^-1 J_4 M = J_4.
pub fn random_sl2h<R: Rng>(rng: &mut R) -> ComplexMatrix {
    loop {
        let mut a = [[ZERO; 2]; 2];
        let mut b = [[ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                a[i][j] = random_complex(rng, 1.0);
                b[i][j] = random_complex(rng, 1.0);
            }
        }
        let m = quaternionic_embed(&a, &b);
        let det = m.det();
        // Dieudonne: the determinant of the embedding is real and positive.
        debug_assert!(det.im.abs() < 1e-9 * det.norm().max(1.0));
        if det.re > 1e-2 {
            return m.scale(ONE / C64::new(det.re.powf(0.25), 0.0));
        }
    }
}

/// Random pair in SL(3,C) as an F2 representation.
pub fn random_sl3_pair<R: Rng>(rng: &mut R) -> TwoGenRep {
    TwoGenRep::new(random_sl(3, rng), random_sl(3, rng), GroupTag::F2).unwrap()
}

fn order3_diag() -> ComplexMatrix {
    ComplexMatrix::diag(&[ONE, omega_pow(1), omega_pow(2)])
}

/// Random order-3 non-scalar pair (a Z/3 * Z/3 representation) with
/// generators conjugated by arbitrary elements of SL(3,C).
pub fn random_order3_pair<R: Rng>(rng: &mut R) -> TwoGenRep {
    let d = order3_diag();
    let a = random_sl(3, rng);
    let b = random_sl(3, rng);
    let s = a.mul(&d).mul(&a.inverse().unwrap());
    let t = b.mul(&d).mul(&b.inverse().unwrap());
    TwoGenRep::new(s, t, GroupTag::Z3Z3).unwrap()
}

/// Random order-3 pair inside SU(3).
pub fn random_su3_order3_pair<R: Rng>(rng: &mut R) -> TwoGenRep {
    let d = order3_diag();
    let u = random_unitary(3, rng);
    let v = random_unitary(3, rng);
    let s = u.mul(&d).mul(&u.adjoint());
    let t = v.mul(&d).mul(&v.adjoint());
    TwoGenRep::new(s, t, GroupTag::Z3Z3).unwrap()
}

/// Random order-3 pair inside SU(2,1).
pub fn random_su21_order3_pair<R: Rng>(rng: &mut R) -> TwoGenRep {
    let d = order3_diag();
    let u = random_su21(rng);
    let v = random_su21(rng);
    let s = u.mul(&d).mul(&u.inverse().unwrap());
    let t = v.mul(&d).mul(&v.inverse().unwrap());
    TwoGenRep::new(s, t, GroupTag::Z3Z3).unwrap()
}

/// Random pair in SL(3,R) (an F2 representation with real entries).
pub fn random_sl3r_pair<R: Rng>(rng: &mut R) -> TwoGenRep {
    TwoGenRep::new(random_sl3r(rng), random_sl3r(rng), GroupTag::F2).unwrap()
}

/// Random order-3 pair inside SL(3,R): conjugates of the cyclic permutation
/// matrix, which realizes the spectrum {1, omega, omega^2} over the reals.
pub fn random_sl3r_order3_pair<R: Rng>(rng: &mut R) -> TwoGenRep {
    let c3 = ComplexMatrix::from_real_rows(&[
        vec![0.0, 0.0, 1.0],
        vec![1.0, 0.0, 0.0],
        vec![0.0, 1.0, 0.0],
    ]);
    let a = random_sl3r(rng);
    let b = random_sl3r(rng);
    let s = a.mul(&c3).mul(&a.inverse().unwrap());
    let t = b.mul(&c3).mul(&b.inverse().unwrap());
    TwoGenRep::new(s, t, GroupTag::Z3Z3).unwrap()
}

/// Random pair in SL(2,H) viewed inside SL(4,C).
pub fn random_sl2h_pair<R: Rng>(rng: &mut R) -> TwoGenRep {
    TwoGenRep::new(random_sl2h(rng), random_sl2h(rng), GroupTag::F2).unwrap()
}

/// Random diagonalizable matrix in SL(3,C) whose spectrum is, with equal
/// probability, a cube-root-of-unity triple or a generic one.
pub fn random_diag_mixed_spectrum<R: Rng>(rng: &mut R) -> ComplexMatrix {
    let evs: [C64; 3] = if rng.gen_bool(0.5) {
        if rng.gen_bool(0.25) {
            let w = omega_pow(rng.gen_range(0..3i64));
            [w, w, w]
        } else {
            let shift = rng.gen_range(0..3i64);
            [omega_pow(shift), omega_pow(shift + 1), omega_pow(shift + 2)]
        }
    } else {
        let l1 = random_complex(rng, 1.5) + C64::new(2.0, 0.0);
        let l2 = random_complex(rng, 1.5) + C64::new(2.0, 0.0);
        [l1, l2, ONE / (l1 * l2)]
    };
    let g = random_sl(3, rng);
    g.mul(&ComplexMatrix::diag(&evs)).mul(&g.inverse().unwrap())
}
