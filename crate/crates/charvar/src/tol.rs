//! Numerical tolerances.
//!
//! Every threshold used by the library is a named constant here, and the
//! [`Tolerances`] record (passed by value to the higher-level entry points)
//! defaults to them. Lower-level routines take the relevant epsilon as an
//! explicit argument so the record stays the single point of override.

/// Entrywise absolute tolerance for "is this matrix Hermitian".
pub const EPS_HERM: f64 = 1e-10;

/// Relative singular-value threshold deciding numerical rank and kernels.
pub const EPS_RANK: f64 = 1e-8;

/// Tolerance on |det - 1| for membership in SL(n,C).
pub const EPS_DET: f64 = 1e-9;

/// Trace tolerance for the order-three criterion (single source of truth
/// for "is this matrix exactly order 3 numerically").
pub const EPS_ORDER3: f64 = 1e-8;

/// Infinity-norm tolerance on M^3 - I for matrices accepted as order 3.
pub const EPS_CUBE: f64 = 1e-7;

/// Tolerance on the X0 relation residual (scaled by 1 + |x|^2).
pub const EPS_X0: f64 = 1e-8;

/// Tolerance deciding whether a trace tuple is fixed by Phi1 / Phi2.
pub const EPS_FIXED: f64 = 1e-6;

/// Residual bound every realization certificate must satisfy.
pub const EPS_CERT: f64 = 1e-7;

/// Base tolerance for reducible-line membership, scaled by 1 + |z| + |w|.
pub const EPS_LINE: f64 = 1e-8;

/// Base tolerance for the Delta boundary, scaled by 1 + |z|^4 + |w|^4.
pub const EPS_DELTA: f64 = 1e-8;

/// Off-diagonal Frobenius norm at which the cyclic Jacobi iteration stops.
pub const EPS_JACOBI: f64 = 1e-13;

/// Target residual of the character realization solver.
pub const EPS_REALIZE: f64 = 1e-9;

/// Maximum restarts of the character realization solver.
pub const MAX_RESTARTS: usize = 32;

/// Maximum unit-circle draws for the Hilbert-90 conjugator.
pub const MAX_ALPHA_DRAWS: usize = 64;

/// Tolerance record threaded by value through solvers and classifiers.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub herm: f64,
    pub rank: f64,
    pub det: f64,
    pub order3: f64,
    pub cube: f64,
    pub x0: f64,
    pub fixed: f64,
    pub cert: f64,
    pub line: f64,
    pub delta: f64,
    pub realize: f64,
    pub max_restarts: usize,
    pub max_alpha_draws: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            herm: EPS_HERM,
            rank: EPS_RANK,
            det: EPS_DET,
            order3: EPS_ORDER3,
            cube: EPS_CUBE,
            x0: EPS_X0,
            fixed: EPS_FIXED,
            cert: EPS_CERT,
            line: EPS_LINE,
            delta: EPS_DELTA,
            realize: EPS_REALIZE,
            max_restarts: MAX_RESTARTS,
            max_alpha_draws: MAX_ALPHA_DRAWS,
        }
    }
}
