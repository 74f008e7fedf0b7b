//! Generalized determinants of rectangular real matrices.
//!
//! The determinant of a square matrix extends to any m-by-n real matrix A:
//! take the square root of the sum of the squared n-by-n minors
//! (equivalently `sqrt(det(AᵀA))`, or the product of the singular values)
//! and attach a sign — the sign of the first nonsingular n-row submatrix in
//! lexicographic row order. Wide matrices (m < n) get the value 0. The
//! resulting `Gdet` agrees with `det` on square matrices, is alternating
//! and multilinear in the columns, is 1 on rectangular identity matrices,
//! satisfies `Gdet(AB) = Gdet(A)·Gdet(B)` for square B, and vanishes
//! exactly when A lacks full column rank.
//!
//! That buys back the familiar determinant toolkit for tall systems:
//! Cramer-style ratios solve consistent overdetermined systems
//! ([`cramer_solve`]), a single determinant tests membership of a point in
//! a subspace or linear variety ([`in_subspace`], [`in_variety`]), and
//! `|Gdet|` is the n-dimensional volume of the parallelepiped spanned by n
//! vectors in Rᵐ, with the sign orienting its projection onto the
//! principal coordinate subspace ([`generalized_volume`]).
//!
//! ```
//! use gdet::{gdet, Matrix, ToleranceConfig};
//!
//! // Two generators in R³, stacked as columns.
//! let a = Matrix::from_rows(&[&[3.0, 6.0], &[4.0, 8.0], &[2.0, 1.0]]);
//! let d = gdet(&a, ToleranceConfig::default());
//! assert!((d.value + 15.0).abs() < 1e-12); // signed area of the parallelogram
//! assert_eq!(d.principal.indices(), &[1, 3]); // oriented via the xz-plane
//! ```
//!
//! Every fast path ships with slower independent routes for
//! cross-validation: the literal minor sum ([`gdet_minor_oracle`]), an
//! exact integer oracle free of floating-point tolerance
//! ([`gdet_exact_oracle`]), the singular-value product
//! ([`singular_value_magnitude`]), and a brute-force permutation
//! maximization for the sign ([`sign_oracle`]). The `examples/` directory
//! walks through each capability; the `gdet` binary exposes them as
//! subcommands.

pub mod cli;
pub mod det;
pub mod error;
pub mod geometry;
pub mod matrix;
pub mod perm;
pub mod sign;

#[cfg(test)]
pub(crate) mod test_support;

pub use det::{
    CauchyBinetCheck, ExactGdet, GdetResult, MultiplicationCheck, QRFactors, check_cauchy_binet,
    check_multiplication, gdet, gdet_exact_oracle, gdet_minor_oracle, qr_factor,
    singular_value_magnitude,
};
pub use error::Error;
pub use geometry::{
    CramerSolution, VolumeResult, cramer_solve, generalized_volume, in_subspace, in_variety,
};
pub use matrix::{Matrix, MatrixFormat, ToleranceConfig, is_zero};
pub use perm::{Permutation, all_permutations};
pub use sign::{
    PrincipalRows, Sign, SignAnalysis, analyze, principal_rows, sigma_max_oracle, sign,
    sign_oracle,
};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
