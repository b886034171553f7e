//! Computations in trace coordinates on SL(3,C)-character varieties of the
//! free group F2 and of the free product Z/3 * Z/3, classification of
//! representations into real forms of SL(n,C) with constructive
//! certificates, and rendering of region-classified slices of the fixed
//! locus of the trace involution induced by A -> conj(t(A))^-1.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]    - dense complex matrices at sizes 2..4 plus the Jacobi
//!   SVD / Hermitian eigensolvers used everywhere else,
//! * [`groups`]    - words in two generators and their evaluation,
//! * [`charcoords`]- trace tuples, the component X0, the polynomials
//!   Q, P, Delta, f, and the involutions on coordinates,
//! * [`realforms`] - conjugator solving, invariant Hermitian forms and the
//!   constructive real-form classification,
//! * [`z3z3`]      - the worked Z/3 * Z/3 example: isolated points,
//!   reducible lines, character realization and classification,
//! * [`slicer`]    - grid scans of slices and PPM/CSV emission,
//! * [`cli`]       - the JSON matrix exchange format and argument parsing
//!   helpers shared with the `charvar` binary.

pub mod charcoords;
pub mod cli;
pub mod error;
pub mod groups;
pub mod linalg;
pub mod realforms;
pub mod sampling;
pub mod selftest;
pub mod slicer;
pub mod tol;
pub mod z3z3;

pub use error::{Error, Result};
pub use linalg::ComplexMatrix;
pub use tol::Tolerances;
