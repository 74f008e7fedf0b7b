//! The sign of a rectangular matrix.
//!
//! For an m-by-n matrix with m ≥ n, the sign is the sign of the determinant
//! of its principal submatrix: the n-by-n row submatrix whose (strictly
//! increasing) row set comes first in lexicographic order among all row sets
//! with nonsingular submatrix. Wide matrices (m < n) and matrices without
//! full column rank have sign 0.
//!
//! The fast path finds the principal rows by a greedy top-to-bottom scan
//! that keeps each row linearly independent of the rows kept so far; row
//! independence is a matroid, so the greedy set is exactly the
//! lexicographically first nonsingular row set. The sign of its minor falls
//! out of the same elimination from the pivot signs and the parity of the
//! pivot-column arrangement, with no extra determinant.
//!
//! An equivalent characterization maximizes a permutation σ over the total
//! order of [`crate::perm`] subject to the selected square submatrix being
//! nonsingular; [`sigma_max_oracle`] implements that maximization by brute
//! force over all of S_m and [`sign_oracle`] derives the sign from it, so
//! the two definitions can be cross-validated on small matrices.

use std::ops::{Mul, Neg};

use crate::error::Error;
use crate::matrix::{Matrix, ToleranceConfig, det_partial_pivot, is_zero};
use crate::perm::{Permutation, all_permutations};

/// Hard cap on the degree accepted by the factorial-enumeration oracles.
const ORACLE_MAX_ROWS: usize = 8;

/// Three-valued sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    /// The sign of a finite float.
    pub fn of(x: f64) -> Sign {
        if x > 0.0 {
            Sign::Positive
        } else if x < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    /// −1, 0, or +1.
    pub fn value(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    /// −1.0, 0.0, or 1.0.
    pub fn as_f64(self) -> f64 {
        f64::from(self.value())
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::of(f64::from(self.value() * rhs.value()))
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Row indices (1-based, strictly increasing) of the principal submatrix,
/// empty when the matrix does not have full column rank.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PrincipalRows {
    indices: Vec<usize>,
}

impl PrincipalRows {
    /// The empty selection, marking a rank-deficient (or wide) matrix.
    pub fn empty() -> Self {
        PrincipalRows::default()
    }

    pub(crate) fn new(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        PrincipalRows { indices }
    }

    /// The selected row indices, 1-based and strictly increasing.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Sign, principal rows, and a conditioning advisory from one elimination pass.
#[derive(Debug, Clone, PartialEq)]
pub struct SignAnalysis {
    pub sign: Sign,
    pub principal: PrincipalRows,
    /// True when some keep/skip decision rested on a pivot within a factor
    /// of 10 of its zero threshold. The sign is discontinuous there, so the
    /// result is reported but flagged.
    pub ill_conditioned: bool,
}

impl SignAnalysis {
    fn zero(ill_conditioned: bool) -> Self {
        SignAnalysis {
            sign: Sign::Zero,
            principal: PrincipalRows::empty(),
            ill_conditioned,
        }
    }
}

/// Greedy rank-revealing scan: principal rows, principal-minor sign, and the
/// conditioning advisory, in one pass over the rows.
pub fn analyze(a: &Matrix, tol: ToleranceConfig) -> SignAnalysis {
    let (m, n) = (a.rows(), a.cols());
    if m < n {
        return SignAnalysis::zero(false);
    }

    // Kept rows in reduced form, each with its pivot column (0-based).
    let mut kept: Vec<(Vec<f64>, usize)> = Vec::with_capacity(n);
    let mut kept_rows: Vec<usize> = Vec::with_capacity(n);
    let mut ill = false;

    for r in 1..=m {
        if kept.len() == n {
            break;
        }
        let mut v = a.row(r).to_vec();
        let scale = a.row_norm(r);
        for (u, pc) in &kept {
            let f = v[*pc] / u[*pc];
            if f != 0.0 {
                for j in 0..n {
                    v[j] -= f * u[j];
                }
            }
            v[*pc] = 0.0;
        }
        let (pivot_col, pivot_mag) = v
            .iter()
            .enumerate()
            .map(|(j, x)| (j, x.abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("n >= 1");
        let threshold = tol.abs_zero.max(tol.rel_zero * scale);
        if pivot_mag > threshold {
            if pivot_mag < 10.0 * threshold {
                ill = true;
            }
            kept.push((v, pivot_col));
            kept_rows.push(r);
        } else if pivot_mag > threshold / 10.0 {
            ill = true;
        }
    }

    if kept.len() < n {
        return SignAnalysis::zero(ill);
    }

    // det of the principal submatrix = parity of the pivot-column
    // arrangement times the product of pivots; only its sign is needed.
    let mut sign = parity_sign(kept.iter().map(|(_, pc)| *pc));
    for (v, pc) in &kept {
        sign = sign * Sign::of(v[*pc]);
    }
    SignAnalysis {
        sign,
        principal: PrincipalRows::new(kept_rows),
        ill_conditioned: ill,
    }
}

/// Sign of the permutation sending k to the k-th pivot column.
fn parity_sign(cols: impl Iterator<Item = usize>) -> Sign {
    let cols: Vec<usize> = cols.collect();
    let mut inversions = 0usize;
    for i in 0..cols.len() {
        for j in i + 1..cols.len() {
            if cols[i] > cols[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// The sign of `a`: 0 for wide or rank-deficient matrices, otherwise the
/// sign of the first nonzero n-by-n minor in lexicographic row order.
pub fn sign(a: &Matrix, tol: ToleranceConfig) -> Sign {
    analyze(a, tol).sign
}

/// The lexicographically first strictly increasing n-tuple of rows whose
/// submatrix is nonsingular; empty when rank < n (or m < n).
pub fn principal_rows(a: &Matrix, tol: ToleranceConfig) -> PrincipalRows {
    analyze(a, tol).principal
}

/// Brute-force maximization over S_m: the largest permutation (under the
/// order of [`crate::perm`]) whose selected rows `σ⁻¹(1), …, σ⁻¹(n)` form a
/// nonsingular submatrix. Falls back to the identity when no permutation
/// qualifies (rank-deficient input). Capped at m ≤ 8.
pub fn sigma_max_oracle(a: &Matrix, tol: ToleranceConfig) -> Result<Permutation, Error> {
    let (m, n) = (a.rows(), a.cols());
    if m > ORACLE_MAX_ROWS {
        return Err(Error::Capacity(format!(
            "sigma-max oracle enumerates S_m and is capped at m <= {ORACLE_MAX_ROWS}, got m = {m}"
        )));
    }
    if m < n {
        return Ok(Permutation::identity(m));
    }
    let mut best: Option<Permutation> = None;
    for sigma in all_permutations(m) {
        let selected = &sigma.inverse().images()[..n];
        let sub = a.row_select(selected)?;
        let det = det_partial_pivot(&sub);
        if is_zero(det, sub.hadamard_bound(), tol) {
            continue;
        }
        let better = match &best {
            None => true,
            Some(b) => sigma.compare(b)? == std::cmp::Ordering::Greater,
        };
        if better {
            best = Some(sigma);
        }
    }
    Ok(best.unwrap_or_else(|| Permutation::identity(m)))
}

/// Sign computed from the σ-maximization instead of the greedy scan; must
/// agree with [`sign`]. Capped at m ≤ 8.
pub fn sign_oracle(a: &Matrix, tol: ToleranceConfig) -> Result<Sign, Error> {
    let (m, n) = (a.rows(), a.cols());
    if m < n {
        return Ok(Sign::Zero);
    }
    let sigma = sigma_max_oracle(a, tol)?;
    let selected = &sigma.inverse().images()[..n];
    let sub = a.row_select(selected)?;
    let det = det_partial_pivot(&sub);
    if is_zero(det, sub.hadamard_bound(), tol) {
        Ok(Sign::Zero)
    } else {
        Ok(Sign::of(det))
    }
}
