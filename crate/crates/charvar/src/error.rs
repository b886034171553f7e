//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("determinant is not 1 (|det - 1| = {0:.3e})")]
    DeterminantNotOne(f64),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not Hermitian (asymmetry {0:.3e})")]
    NotHermitian(f64),
    #[error("Hermitian form is near-singular (|lambda_min|/|lambda_max| = {0:.3e})")]
    NearSingularForm(f64),
    #[error("matrix has non-finite entries")]
    NonFiniteEntries,
    #[error("matrix is not of order three")]
    NotOrderThree,
    #[error("generator has a degenerate (scalar) spectrum")]
    DegenerateSpectrum,
    #[error("trace tuple is not on X0 (order-3 trace preconditions fail)")]
    NotInX0,
    #[error("X0 relation violated (residual {0:.3e})")]
    RelationViolated(f64),
    #[error("point does not satisfy the real X0 locus equations")]
    NotOnX0,
    #[error("no conjugator: characters differ")]
    NoConjugator,
    #[error("conjugator is not unique (reducible pair)")]
    AmbiguousConjugator,
    #[error("solution space has dimension {0}, expected 1")]
    KernelDimensionNotOne(usize),
    #[error("solution is not proportional to its adjoint")]
    NotProportionalToAdjoint,
    #[error("character is not fixed by Phi1 (deviation {0:.3e})")]
    NotFixedByPhi1(f64),
    #[error("character is not fixed by Phi2 (deviation {0:.3e})")]
    NotFixedByPhi2(f64),
    #[error("conj(P)P is not +/- identity (lambda = {0})")]
    LambdaNotPlusMinusOne(num_complex::Complex64),
    #[error("no invertible Q_alpha found in {0} draws")]
    NoInvertibleQ(usize),
    #[error("generators are not unitary")]
    NotUnitaryInput,
    #[error("point lies on a reducible line")]
    OnReducibleLocus,
    #[error("realization did not converge ({attempts} attempts, best residual {best:.3e})")]
    NoConvergence { attempts: usize, best: f64 },
    #[error("degenerate parameter for the reducible block construction")]
    DegenerateParameter,
    #[error("unresolved point at (z, w) = ({0}, {1}): {2}")]
    UnresolvedPoint(num_complex::Complex64, num_complex::Complex64, String),
    #[error("{path}: {msg}")]
    MatrixFile { path: String, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
