//! Geometric applications of the generalized determinant: Cramer-style
//! solving of consistent overdetermined systems, membership in subspaces
//! and linear varieties, and the oriented volume of a parallelepiped
//! spanned by n vectors in Rᵐ.

use crate::det::{QRFactors, gdet, qr_factor};
use crate::error::Error;
use crate::matrix::{Matrix, ToleranceConfig, vec_norm};
use crate::sign::{PrincipalRows, Sign};

/// Solution of a consistent overdetermined system by determinant ratios.
#[derive(Debug, Clone, PartialEq)]
pub struct CramerSolution {
    /// The unique solution of `Ax = b`.
    pub x: Vec<f64>,
    /// `‖Ax − b‖₂` for the returned x.
    pub residual_norm: f64,
    /// For each coordinate i, the pair `(Gdet(A_i), Gdet(A))` whose ratio
    /// is `x[i]`, where `A_i` is A with column i replaced by b.
    pub per_coordinate: Vec<(f64, f64)>,
}

/// Solves `Ax = b` for full-column-rank A (m ≥ n) and b in the column
/// space of A, coordinate by coordinate as `x_i = Gdet(A_i)/Gdet(A)`.
///
/// A zero generalized determinant means the system has no solution or
/// infinitely many and is reported as [`Error::Singular`]; a right-hand
/// side outside the column space (detected by the least-squares residual
/// of an orthogonal solve) is reported as [`Error::Inconsistent`].
pub fn cramer_solve(a: &Matrix, b: &[f64], tol: ToleranceConfig) -> Result<CramerSolution, Error> {
    let (m, n) = (a.rows(), a.cols());
    if b.len() != m {
        return Err(Error::Dimension(format!(
            "right-hand side has {} entries, expected {m}",
            b.len()
        )));
    }
    let ga = gdet(a, tol);
    if ga.sign == Sign::Zero {
        return Err(Error::Singular(
            "generalized determinant is zero: no solution or infinitely many".into(),
        ));
    }

    // Consistency gate: residual of a stable orthogonal least-squares solve.
    let factors = qr_factor(a, tol)?;
    let x_ls = least_squares_from_qr(&factors, b);
    let residual_ls = residual_norm(a, &x_ls, b);
    let bound = tol
        .abs_zero
        .max(tol.rel_zero * (a.frobenius_norm() * vec_norm(&x_ls) + vec_norm(b)));
    if residual_ls > bound {
        return Err(Error::Inconsistent {
            residual: residual_ls,
        });
    }

    let mut x = Vec::with_capacity(n);
    let mut per_coordinate = Vec::with_capacity(n);
    for i in 1..=n {
        let ai = a.with_column_replaced(i, b)?;
        let gi = gdet(&ai, tol);
        x.push(gi.value / ga.value);
        per_coordinate.push((gi.value, ga.value));
    }
    let residual = residual_norm(a, &x, b);
    Ok(CramerSolution {
        x,
        residual_norm: residual,
        per_coordinate,
    })
}

/// `x = R⁻¹ Qᵀ b` by back substitution.
fn least_squares_from_qr(factors: &QRFactors, b: &[f64]) -> Vec<f64> {
    let q = &factors.q;
    let r = &factors.r;
    let n = r.rows();
    let mut y = vec![0.0; n];
    for j in 1..=n {
        y[j - 1] = (1..=q.rows()).map(|i| q.get(i, j) * b[i - 1]).sum();
    }
    let mut x = vec![0.0; n];
    for i in (1..=n).rev() {
        let mut s = y[i - 1];
        for j in i + 1..=n {
            s -= r.get(i, j) * x[j - 1];
        }
        x[i - 1] = s / r.get(i, i);
    }
    x
}

fn residual_norm(a: &Matrix, x: &[f64], b: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 1..=a.rows() {
        let row = a.row(i);
        let ax: f64 = row.iter().zip(x).map(|(r, xv)| r * xv).sum();
        let d = ax - b[i - 1];
        acc += d * d;
    }
    acc.sqrt()
}

/// True iff `x` lies in the span of the columns of `basis` (n independent
/// vectors in Rᵐ, n < m): the generalized determinant of the basis with x
/// appended as an extra column vanishes at a threshold scaled by the
/// basis Gdet and `‖x‖`, making the predicate invariant under uniform
/// scaling of all inputs.
pub fn in_subspace(basis: &Matrix, x: &[f64], tol: ToleranceConfig) -> Result<bool, Error> {
    let (m, n) = (basis.rows(), basis.cols());
    if x.len() != m {
        return Err(Error::Dimension(format!(
            "point has {} entries, expected {m}",
            x.len()
        )));
    }
    if n >= m {
        return Err(Error::Dimension(format!(
            "a proper subspace of R^{m} needs fewer than {m} basis vectors, got {n}"
        )));
    }
    let gb = gdet(basis, tol);
    if gb.sign == Sign::Zero {
        return Err(Error::DependentBasis);
    }
    let appended = basis.with_column_appended(x)?;
    let gx = gdet(&appended, tol);
    let threshold = tol
        .abs_zero
        .max(tol.rel_zero * gb.magnitude * vec_norm(x));
    Ok(gx.magnitude <= threshold)
}

/// True iff `x` lies in the linear variety `offset + span(basis)`:
/// membership of `x − offset` in the subspace.
pub fn in_variety(
    basis: &Matrix,
    offset: &[f64],
    x: &[f64],
    tol: ToleranceConfig,
) -> Result<bool, Error> {
    if offset.len() != x.len() {
        return Err(Error::Dimension(format!(
            "offset has {} entries, point has {}",
            offset.len(),
            x.len()
        )));
    }
    let shifted: Vec<f64> = x.iter().zip(offset).map(|(xi, oi)| xi - oi).collect();
    in_subspace(basis, &shifted, tol)
}

/// Volume and orientation of the parallelepiped spanned by n generators.
#[derive(Debug, Clone, PartialEq)]
pub struct VolumeResult {
    /// n-dimensional volume; 0 for degenerate (dependent) generators.
    pub volume: f64,
    /// Sign of the generalized determinant of the generator matrix. It
    /// orients the projection of the generators onto the coordinate
    /// subspace named by `principal`.
    pub orientation: Sign,
    /// Rows of the principal submatrix: the coordinates of the projection
    /// plane the orientation refers to.
    pub principal: PrincipalRows,
}

/// Generalized volume of the parallelepiped `{Σ x_i g_i | 0 ≤ x_i ≤ 1}`
/// spanned by the columns of `generators`: the magnitude of their
/// generalized determinant, with the sign reported as orientation.
/// Degenerate generators give volume 0 and orientation 0.
pub fn generalized_volume(generators: &Matrix, tol: ToleranceConfig) -> VolumeResult {
    let d = gdet(generators, tol);
    VolumeResult {
        volume: d.magnitude,
        orientation: d.sign,
        principal: d.principal,
    }
}
