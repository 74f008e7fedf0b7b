//! The generalized determinant and its identities.
//!
//! For an m-by-n real matrix A the generalized determinant is
//!
//! ```text
//! Gdet(A) = sign(A) * sqrt( Σ det(A_{i1..in})² )    for m ≥ n,
//! Gdet(A) = 0                                        for m < n,
//! ```
//!
//! where the sum runs over all strictly increasing row n-tuples and the sign
//! comes from [`crate::sign`]. The magnitude equals `sqrt(det(AᵀA))` by the
//! Cauchy-Binet identity, and also `det(R)` for the QR factorization with
//! positive diagonal, which is what the fast path computes. Three slower
//! routes — the literal minor sum, an exact integer minor sum, and the
//! product of singular values — are kept alongside as cross-checking
//! oracles.
//!
//! Gdet is alternating and multilinear in the columns, takes the value 1 on
//! rectangular identity matrices, is nonzero exactly on full-column-rank
//! matrices, and satisfies `Gdet(AB) = Gdet(A)·Gdet(B)` for square B on the
//! right (but not for square factors on the left; see
//! [`check_multiplication`]).

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::matrix::{Matrix, ToleranceConfig, det_partial_pivot, is_zero};
use crate::sign::{self, PrincipalRows, Sign};

/// Enumeration guard for the floating-point minor-sum oracle.
const MINOR_ORACLE_MAX_SUBSETS: u128 = 1_000_000;
/// Enumeration guard for the exact oracle and the Cauchy-Binet checker.
const EXACT_ORACLE_MAX_SUBSETS: u128 = 100_000;
/// Entry bound for the exact oracle.
const EXACT_ORACLE_MAX_ENTRY: f64 = (1u64 << 20) as f64;

/// Signed generalized determinant with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct GdetResult {
    /// Sign of the principal minor; `Zero` for wide or rank-deficient input.
    pub sign: Sign,
    /// `sqrt(Σ minors²)`, clamped to exactly 0 when the rank test fails.
    pub magnitude: f64,
    /// `sign * magnitude`.
    pub value: f64,
    /// Rows of the principal submatrix that produced the sign.
    pub principal: PrincipalRows,
}

impl GdetResult {
    fn zero() -> Self {
        GdetResult {
            sign: Sign::Zero,
            magnitude: 0.0,
            value: 0.0,
            principal: PrincipalRows::empty(),
        }
    }

    fn from_parts(sign: Sign, magnitude: f64, principal: PrincipalRows) -> Self {
        if sign == Sign::Zero {
            return GdetResult::zero();
        }
        GdetResult {
            sign,
            magnitude,
            value: sign.as_f64() * magnitude,
            principal,
        }
    }
}

/// Thin QR factors: `q` has orthonormal columns, `r` is upper triangular
/// with strictly positive diagonal, and `q * r` reproduces the input.
#[derive(Debug, Clone, PartialEq)]
pub struct QRFactors {
    pub q: Matrix,
    pub r: Matrix,
}

/// Generalized determinant by the QR fast path.
///
/// The sign and the principal rows come from the greedy scan of
/// [`crate::sign`]; the magnitude is the product of the diagonal of R.
/// Wide and rank-deficient inputs yield an all-zero result.
///
/// ```
/// use gdet::{gdet, Matrix, ToleranceConfig};
/// let a = Matrix::from_rows(&[&[3.0, 6.0], &[4.0, 8.0], &[2.0, 1.0]]);
/// let d = gdet(&a, ToleranceConfig::default());
/// assert!((d.value + 15.0).abs() < 1e-12);
/// assert_eq!(d.principal.indices(), &[1, 3]);
/// ```
pub fn gdet(a: &Matrix, tol: ToleranceConfig) -> GdetResult {
    let (m, n) = (a.rows(), a.cols());
    if m < n {
        return GdetResult::zero();
    }
    let analysis = sign::analyze(a, tol);
    if analysis.sign == Sign::Zero {
        return GdetResult::zero();
    }
    let (_, r) = householder_qr(a);
    let magnitude = (1..=n).map(|i| r.get(i, i)).product::<f64>().abs();
    GdetResult::from_parts(analysis.sign, magnitude, analysis.principal)
}

/// Generalized determinant computed literally from the definition: the
/// square root of the sum of squared n-by-n minors over all strictly
/// increasing row tuples, with the sign read off the lexicographically
/// first nonzero minor. Same contract as [`gdet`]; guards the enumeration
/// at 10⁶ subsets.
pub fn gdet_minor_oracle(a: &Matrix, tol: ToleranceConfig) -> Result<GdetResult, Error> {
    let (m, n) = (a.rows(), a.cols());
    if m < n {
        return Ok(GdetResult::zero());
    }
    let subsets = binomial(m, n);
    if subsets > MINOR_ORACLE_MAX_SUBSETS {
        return Err(Error::Capacity(format!(
            "minor-sum oracle would enumerate C({m},{n}) = {subsets} > {MINOR_ORACLE_MAX_SUBSETS} subsets"
        )));
    }
    let mut sum = 0.0;
    let mut sign = Sign::Zero;
    let mut principal = PrincipalRows::empty();
    for combo in (1..=m).combinations(n) {
        let sub = a.row_select(&combo)?;
        let det = det_partial_pivot(&sub);
        if sign == Sign::Zero && !is_zero(det, sub.hadamard_bound(), tol) {
            sign = Sign::of(det);
            principal = PrincipalRows::new(combo);
        }
        sum += det * det;
    }
    Ok(GdetResult::from_parts(sign, sum.sqrt(), principal))
}

/// Exact sign and squared magnitude of an integer matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactGdet {
    /// Sign of the lexicographically first nonzero minor, decided in exact
    /// arithmetic.
    pub sign: Sign,
    /// `Σ minors²` as an exact integer.
    pub magnitude_squared: BigInt,
    /// Rows of that first nonzero minor (empty when all minors vanish).
    pub principal: PrincipalRows,
}

/// Exact-arithmetic oracle: every minor is computed by fraction-free
/// Bareiss elimination over the integers, so the result carries no
/// floating-point tolerance at all.
///
/// Entries must be integers of magnitude at most 2²⁰; the enumeration is
/// guarded at 10⁵ subsets.
pub fn gdet_exact_oracle(a: &Matrix) -> Result<ExactGdet, Error> {
    let (m, n) = (a.rows(), a.cols());
    let mut ints: Vec<Vec<i64>> = Vec::with_capacity(m);
    for i in 1..=m {
        let mut row = Vec::with_capacity(n);
        for j in 1..=n {
            let v = a.get(i, j);
            if v.fract() != 0.0 || v.abs() > EXACT_ORACLE_MAX_ENTRY {
                return Err(Error::NonInteger {
                    row: i,
                    col: j,
                    value: v,
                });
            }
            row.push(v as i64);
        }
        ints.push(row);
    }
    if m < n {
        return Ok(ExactGdet {
            sign: Sign::Zero,
            magnitude_squared: BigInt::zero(),
            principal: PrincipalRows::empty(),
        });
    }
    let subsets = binomial(m, n);
    if subsets > EXACT_ORACLE_MAX_SUBSETS {
        return Err(Error::Capacity(format!(
            "exact oracle would enumerate C({m},{n}) = {subsets} > {EXACT_ORACLE_MAX_SUBSETS} subsets"
        )));
    }
    let mut sum = BigInt::zero();
    let mut sign = Sign::Zero;
    let mut principal = PrincipalRows::empty();
    for combo in (0..m).combinations(n) {
        let sub: Vec<Vec<BigInt>> = combo
            .iter()
            .map(|&i| ints[i].iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        let det = bareiss_det(sub);
        if sign == Sign::Zero && !det.is_zero() {
            sign = if det.is_negative() {
                Sign::Negative
            } else {
                Sign::Positive
            };
            principal = PrincipalRows::new(combo.iter().map(|&i| i + 1).collect());
        }
        sum += &det * &det;
    }
    Ok(ExactGdet {
        sign,
        magnitude_squared: sum,
        principal,
    })
}

/// Fraction-free determinant of a square integer matrix. Every division in
/// the Bareiss recurrence is exact, so no rationals appear.
fn bareiss_det(mut w: Vec<Vec<BigInt>>) -> BigInt {
    let n = w.len();
    let mut negate = false;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if w[k][k].is_zero() {
            match (k + 1..n).find(|&i| !w[i][k].is_zero()) {
                Some(swap) => {
                    w.swap(k, swap);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &w[i][j] * &w[k][k] - &w[i][k] * &w[k][j];
                w[i][j] = num / &prev;
            }
            w[i][k] = BigInt::zero();
        }
        prev = w[k][k].clone();
    }
    let det = w[n - 1][n - 1].clone();
    if negate { -det } else { det }
}

/// Householder QR with the diagonal of R normalized strictly positive.
///
/// Errors with [`Error::RankDeficient`] when some diagonal entry of R falls
/// within the zero tolerance of its column scale (which covers m < n).
pub fn qr_factor(a: &Matrix, tol: ToleranceConfig) -> Result<QRFactors, Error> {
    let (m, n) = (a.rows(), a.cols());
    if m < n {
        return Err(Error::RankDeficient);
    }
    let (q, r) = householder_qr(a);
    for j in 1..=n {
        let scale = crate::matrix::vec_norm(&a.column(j));
        if is_zero(r.get(j, j), scale, tol) {
            return Err(Error::RankDeficient);
        }
    }
    Ok(QRFactors { q, r })
}

/// Unchecked Householder factorization; diagonal entries of R are
/// normalized nonnegative by flipping R rows together with Q columns.
fn householder_qr(a: &Matrix) -> (Matrix, Matrix) {
    let (m, n) = (a.rows(), a.cols());
    debug_assert!(m >= n);
    let mut r: Vec<Vec<f64>> = (1..=m).map(|i| a.row(i).to_vec()).collect();
    let mut reflectors: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n);

    for k in 0..n {
        let norm = (k..m).map(|i| r[i][k] * r[i][k]).sum::<f64>().sqrt();
        if norm == 0.0 {
            reflectors.push((Vec::new(), 0.0));
            continue;
        }
        let alpha = if r[k][k] >= 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k..m).map(|i| r[i][k]).collect();
        v[0] -= alpha;
        let vtv: f64 = v.iter().map(|x| x * x).sum();
        let beta = if vtv == 0.0 { 0.0 } else { 2.0 / vtv };
        for j in k + 1..n {
            let dot: f64 = (k..m).map(|i| v[i - k] * r[i][j]).sum();
            let f = beta * dot;
            if f != 0.0 {
                for i in k..m {
                    r[i][j] -= f * v[i - k];
                }
            }
        }
        r[k][k] = alpha;
        for row in r.iter_mut().take(m).skip(k + 1) {
            row[k] = 0.0;
        }
        reflectors.push((v, beta));
    }

    // Thin Q: apply the reflectors to the rectangular identity in reverse.
    let mut q: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            let mut row = vec![0.0; n];
            if i < n {
                row[i] = 1.0;
            }
            row
        })
        .collect();
    for k in (0..n).rev() {
        let (v, beta) = &reflectors[k];
        if *beta == 0.0 {
            continue;
        }
        for j in 0..n {
            let dot: f64 = (k..m).map(|i| v[i - k] * q[i][j]).sum();
            let f = beta * dot;
            if f != 0.0 {
                for i in k..m {
                    q[i][j] -= f * v[i - k];
                }
            }
        }
    }

    // Positive-diagonal convention: flip row i of R and column i of Q in pairs.
    for i in 0..n {
        if r[i][i] < 0.0 {
            for j in 0..n {
                r[i][j] = -r[i][j];
            }
            for row in q.iter_mut() {
                row[i] = -row[i];
            }
        }
    }

    let r_top: Vec<Vec<f64>> = r.into_iter().take(n).collect();
    (Matrix::from_nested(q), Matrix::from_nested(r_top))
}

/// Both sides of the multiplication law `Gdet(A·B) = Gdet(A)·Gdet(B)` for a
/// square right factor.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplicationCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Evaluates the multiplication law for `a` (m-by-n) and square `b`
/// (n-by-n). The law is only claimed for square right factors; a non-square
/// `b` is a dimension error. `holds` compares the two sides at the
/// tolerance, scaled by their magnitudes.
pub fn check_multiplication(
    a: &Matrix,
    b: &Matrix,
    tol: ToleranceConfig,
) -> Result<MultiplicationCheck, Error> {
    if b.rows() != b.cols() {
        return Err(Error::Dimension(format!(
            "right factor must be square, got {}x{}",
            b.rows(),
            b.cols()
        )));
    }
    if a.cols() != b.rows() {
        return Err(Error::Dimension(format!(
            "inner dimensions disagree: {}x{} times {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let lhs = gdet(&a.matmul(b)?, tol).value;
    let rhs = gdet(a, tol).value * gdet(b, tol).value;
    let holds = is_zero(lhs - rhs, lhs.abs().max(rhs.abs()), tol);
    Ok(MultiplicationCheck { lhs, rhs, holds })
}

/// Both sides of the generalized Cauchy-Binet identity, together with the
/// coefficient actually used and the literal top/bottom reading of it.
#[derive(Debug, Clone, PartialEq)]
pub struct CauchyBinetCheck {
    /// `coefficient * det(AᵀA)`.
    pub lhs: f64,
    /// `Σ Gdet(k-row submatrix)²` over strictly increasing k-tuples.
    pub rhs: f64,
    pub holds: bool,
    /// C(m−n, k−n): each n-subset extends to a k-subset by choosing k−n of
    /// the m−n unused rows. This is the count the identity needs.
    pub coefficient: u128,
    /// C(k−n, m−n), the other way the binomial could be read; reported so
    /// the two candidate readings can be compared side by side.
    pub coefficient_literal: u128,
}

/// Evaluates the generalized Cauchy-Binet identity at subset size `k`,
/// n ≤ k ≤ m:
///
/// ```text
/// C(m−n, k−n) · det(AᵀA) = Σ Gdet(A rows i1..ik)²
/// ```
///
/// The enumeration is guarded at 10⁵ subsets.
pub fn check_cauchy_binet(
    a: &Matrix,
    k: usize,
    tol: ToleranceConfig,
) -> Result<CauchyBinetCheck, Error> {
    let (m, n) = (a.rows(), a.cols());
    if k < n || k > m {
        return Err(Error::Dimension(format!(
            "subset size k = {k} must satisfy n = {n} <= k <= m = {m}"
        )));
    }
    let subsets = binomial(m, k);
    if subsets > EXACT_ORACLE_MAX_SUBSETS {
        return Err(Error::Capacity(format!(
            "Cauchy-Binet check would enumerate C({m},{k}) = {subsets} > {EXACT_ORACLE_MAX_SUBSETS} subsets"
        )));
    }
    let coefficient = binomial(m - n, k - n);
    let coefficient_literal = binomial(k - n, m - n);
    let lhs = coefficient as f64 * det_partial_pivot(&a.gram());
    let mut rhs = 0.0;
    for combo in (1..=m).combinations(k) {
        let sub = a.row_select(&combo)?;
        let g = gdet(&sub, tol).value;
        rhs += g * g;
    }
    let holds = is_zero(lhs - rhs, lhs.abs().max(rhs.abs()), tol);
    Ok(CauchyBinetCheck {
        lhs,
        rhs,
        holds,
        coefficient,
        coefficient_literal,
    })
}

/// Product of the n singular values of `a`, computed from the eigenvalues
/// of the Gram matrix by cyclic Jacobi iteration. Equals the magnitude of
/// the generalized determinant (exactly 0-valued for wide input, since the
/// Gram matrix is then singular).
pub fn singular_value_magnitude(a: &Matrix) -> f64 {
    let eigenvalues = jacobi_eigenvalues(&a.gram());
    eigenvalues
        .into_iter()
        .map(|l| l.max(0.0).sqrt())
        .product()
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
fn jacobi_eigenvalues(g: &Matrix) -> Vec<f64> {
    debug_assert_eq!(g.rows(), g.cols());
    let n = g.rows();
    let mut a: Vec<Vec<f64>> = (1..=n).map(|i| g.row(i).to_vec()).collect();
    if n == 1 {
        return vec![a[0][0]];
    }
    let frob2: f64 = a.iter().flatten().map(|v| v * v).sum();
    let stop = frob2 * 1e-30;

    for _sweep in 0..60 {
        let off2: f64 = (0..n)
            .map(|p| (p + 1..n).map(|q| a[p][q] * a[p][q]).sum::<f64>())
            .sum();
        if off2 <= stop {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let tau = (a[q][q] - a[p][p]) / (2.0 * apq);
                // signum(0.0) is +1, giving the 45-degree rotation there.
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for i in 0..n {
                    let aip = a[i][p];
                    let aiq = a[i][q];
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for j in 0..n {
                    let apj = a[p][j];
                    let aqj = a[q][j];
                    a[p][j] = c * apj - s * aqj;
                    a[q][j] = s * apj + c * aqj;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

/// Binomial coefficient, exact in u128 for the guarded ranges.
fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::TestRng;
    use num_traits::ToPrimitive;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn gdet_examples() {
        let a = Matrix::from_rows(&[&[3.0, 6.0], &[4.0, 8.0], &[2.0, 1.0]]);
        let d = gdet(&a, tol());
        assert_eq!(d.sign, Sign::Negative);
        assert!((d.value + 15.0).abs() < 1e-12);
        assert_eq!(d.principal.indices(), &[1, 3]);
        assert_eq!(d.value, d.sign.as_f64() * d.magnitude);

        let square = Matrix::from_rows(&[&[1.0, 0.0], &[0.0, 2.0]]);
        assert!((gdet(&square, tol()).value - 2.0).abs() < 1e-14);

        let wide = Matrix::from_rows(&[&[1.0, 0.0]]);
        let dw = gdet(&wide, tol());
        assert_eq!(dw.sign, Sign::Zero);
        assert_eq!(dw.value, 0.0);

        let col = Matrix::column_vector(&[3.0, 4.0, 2.0]);
        let dc = gdet(&col, tol());
        assert_eq!(dc.sign, Sign::Positive);
        assert!((dc.magnitude - 29f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn gdet_clamps_rank_deficient_to_zero() {
        let a = Matrix::from_rows(&[&[1.0, 2.0], &[2.0, 4.0], &[3.0, 6.0]]);
        let d = gdet(&a, tol());
        assert_eq!(d.sign, Sign::Zero);
        assert_eq!(d.magnitude, 0.0);
        assert_eq!(d.value, 0.0);
        assert!(d.principal.is_empty());
    }

    #[test]
    fn minor_oracle_examples() {
        let a = Matrix::from_rows(&[&[3.0, 6.0], &[4.0, 8.0], &[2.0, 1.0]]);
        let d = gdet_minor_oracle(&a, tol()).unwrap();
        // Minors 0, -9, -12 sum to 225.
        assert!((d.magnitude - 15.0).abs() < 1e-12);
        assert!((d.value + 15.0).abs() < 1e-12);
        assert_eq!(d.principal.indices(), &[1, 3]);

        for (m, n) in [(3, 2), (5, 3), (4, 4)] {
            let d = gdet_minor_oracle(&Matrix::rectangular_identity(m, n), tol()).unwrap();
            assert_eq!(d.value, 1.0);
        }

        let ones = Matrix::from_rows(&[&[1.0], &[1.0]]);
        let d = gdet_minor_oracle(&ones, tol()).unwrap();
        assert!((d.magnitude - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn exact_oracle_examples() {
        let a = Matrix::from_rows(&[&[3.0, 6.0], &[4.0, 8.0], &[2.0, 1.0]]);
        let e = gdet_exact_oracle(&a).unwrap();
        assert_eq!(e.sign, Sign::Negative);
        assert_eq!(e.magnitude_squared, BigInt::from(225));
        assert_eq!(e.principal.indices(), &[1, 3]);

        let z = gdet_exact_oracle(&Matrix::zeros(3, 2)).unwrap();
        assert_eq!(z.sign, Sign::Zero);
        assert_eq!(z.magnitude_squared, BigInt::zero());

        let b = Matrix::from_rows(&[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]);
        let e = gdet_exact_oracle(&b).unwrap();
        assert_eq!(e.sign, Sign::Positive);
        assert_eq!(e.magnitude_squared, BigInt::from(3));

        assert!(matches!(
            gdet_exact_oracle(&Matrix::from_rows(&[&[0.5]])),
            Err(Error::NonInteger { .. })
        ));
        assert!(matches!(
            gdet_exact_oracle(&Matrix::from_rows(&[&[2e6]])),
            Err(Error::NonInteger { .. })
        ));
    }

    #[test]
    fn bareiss_matches_float_determinant() {
        let mut rng = TestRng::new(0x5eed_0010);
        for _ in 0..300 {
            let n = rng.range(1, 6);
            let a = rng.int_matrix(n, n, 5);
            let exact = gdet_exact_oracle(&a).unwrap();
            let d = det_partial_pivot(&a);
            let m2 = exact.magnitude_squared.to_f64().unwrap();
            assert!(close(m2, d * d, 1e-9), "matrix:\n{a}");
        }
    }

    #[test]
    fn qr_examples() {
        let a = Matrix::from_rows(&[&[3.0], &[4.0]]);
        let f = qr_factor(&a, tol()).unwrap();
        assert!((f.q.get(1, 1) - 0.6).abs() < 1e-15);
        assert!((f.q.get(2, 1) - 0.8).abs() < 1e-15);
        assert!((f.r.get(1, 1) - 5.0).abs() < 1e-15);

        let eye = Matrix::rectangular_identity(3, 2);
        let f = qr_factor(&eye, tol()).unwrap();
        assert_eq!(f.q, eye);
        assert_eq!(f.r, Matrix::identity(2));

        let a = Matrix::from_rows(&[&[3.0, 6.0], &[4.0, 8.0], &[2.0, 1.0]]);
        let f = qr_factor(&a, tol()).unwrap();
        let diag_product: f64 = (1..=2).map(|i| f.r.get(i, i)).product();
        assert!((diag_product - 15.0).abs() < 1e-12);

        assert!(matches!(
            qr_factor(&Matrix::zeros(3, 2), tol()),
            Err(Error::RankDeficient)
        ));
        assert!(matches!(
            qr_factor(&Matrix::from_rows(&[&[1.0, 2.0]]), tol()),
            Err(Error::RankDeficient)
        ));
    }

    #[test]
    fn qr_invariants_on_random_input() {
        let mut rng = TestRng::new(0x5eed_0011);
        let mut tested = 0;
        while tested < 200 {
            let m = rng.range(1, 7);
            let n = rng.range(1, m);
            let a = rng.int_matrix(m, n, 4);
            if gdet(&a, tol()).sign == Sign::Zero {
                continue;
            }
            tested += 1;
            let f = qr_factor(&a, tol()).unwrap();
            // R upper triangular, strictly positive diagonal.
            for i in 1..=n {
                assert!(f.r.get(i, i) > 0.0);
                for j in 1..i {
                    assert_eq!(f.r.get(i, j), 0.0);
                }
            }
            // QᵀQ = I within 1e-12 entrywise.
            let qtq = f.q.gram();
            for i in 1..=n {
                for j in 1..=n {
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!((qtq.get(i, j) - expected).abs() < 1e-12, "a:\n{a}");
                }
            }
            // Q·R reproduces A within 1e-10 relative Frobenius error.
            let qr = f.q.matmul(&f.r).unwrap();
            let mut err2 = 0.0;
            for i in 1..=m {
                for j in 1..=n {
                    let d = qr.get(i, j) - a.get(i, j);
                    err2 += d * d;
                }
            }
            let scale = a.frobenius_norm().max(1e-300);
            assert!(err2.sqrt() / scale < 1e-10);
            // Sign transfers from A to Q.
            assert_eq!(sign::sign(&f.q, tol()), sign::sign(&a, tol()));
        }
    }

    #[test]
    fn multiplication_check_examples() {
        let a = Matrix::from_rows(&[&[1.0], &[0.0]]);
        let b = Matrix::from_rows(&[&[2.0]]);
        let c = check_multiplication(&a, &b, tol()).unwrap();
        assert_eq!(c.lhs, 2.0);
        assert_eq!(c.rhs, 2.0);
        assert!(c.holds);

        let a = Matrix::from_rows(&[&[3.0, 6.0], &[4.0, 8.0], &[2.0, 1.0]]);
        let c = check_multiplication(&a, &Matrix::identity(2), tol()).unwrap();
        assert!((c.lhs + 15.0).abs() < 1e-12);
        assert!((c.rhs + 15.0).abs() < 1e-12);
        assert!(c.holds);

        assert!(check_multiplication(&a, &Matrix::zeros(3, 2), tol()).is_err());
        assert!(check_multiplication(&a, &Matrix::identity(3), tol()).is_err());
    }

    #[test]
    fn left_multiplication_law_fails() {
        // Square factor on the left: Gdet(B·A) = 1 but Gdet(B)·Gdet(A) = 2.
        let b = Matrix::from_rows(&[&[1.0, 0.0], &[0.0, 2.0]]);
        let a = Matrix::column_vector(&[1.0, 0.0]);
        let lhs = gdet(&b.matmul(&a).unwrap(), tol()).value;
        let rhs = gdet(&b, tol()).value * gdet(&a, tol()).value;
        assert_eq!(lhs, 1.0);
        assert_eq!(rhs, 2.0);
    }

    #[test]
    fn cauchy_binet_examples() {
        let a = Matrix::column_vector(&[1.0, 2.0, 3.0]);
        let c = check_cauchy_binet(&a, 2, tol()).unwrap();
        assert_eq!(c.coefficient, 2);
        assert!((c.lhs - 28.0).abs() < 1e-12);
        assert!((c.rhs - 28.0).abs() < 1e-10);
        assert!(c.holds);

        let b = Matrix::from_rows(&[&[3.0, 6.0], &[4.0, 8.0], &[2.0, 1.0]]);
        // k = n reduces to det(AᵀA) on both sides.
        let c = check_cauchy_binet(&b, 2, tol()).unwrap();
        assert_eq!(c.coefficient, 1);
        assert!((c.lhs - 225.0).abs() < 1e-9);
        assert!(c.holds);
        // k = m: a single subset, both sides Gdet(A)².
        let c = check_cauchy_binet(&b, 3, tol()).unwrap();
        assert_eq!(c.coefficient, 1);
        assert!((c.rhs - 225.0).abs() < 1e-9);
        assert!(c.holds);

        assert!(check_cauchy_binet(&b, 1, tol()).is_err());
        assert!(check_cauchy_binet(&b, 4, tol()).is_err());
    }

    #[test]
    fn singular_value_examples() {
        let a = Matrix::from_rows(&[&[3.0, 6.0], &[4.0, 8.0], &[2.0, 1.0]]);
        assert!((singular_value_magnitude(&a) - 15.0).abs() < 1e-10);

        for (m, n) in [(4, 2), (3, 3), (6, 1)] {
            let sv = singular_value_magnitude(&Matrix::rectangular_identity(m, n));
            assert!((sv - 1.0).abs() < 1e-13);
        }

        let d = Matrix::from_rows(&[&[2.0, 0.0], &[0.0, 3.0], &[0.0, 0.0]]);
        assert!((singular_value_magnitude(&d) - 6.0).abs() < 1e-12);
    }

    #[test]
    fn three_float_paths_agree() {
        let mut rng = TestRng::new(0x5eed_0012);
        for _ in 0..400 {
            let m = rng.range(1, 7);
            let n = rng.range(1, m);
            let a = rng.int_matrix(m, n, 3);
            let fast = gdet(&a, tol());
            let oracle = gdet_minor_oracle(&a, tol()).unwrap();
            let spectral = fast.sign.as_f64() * singular_value_magnitude(&a);
            assert_eq!(fast.sign, oracle.sign, "matrix:\n{a}");
            assert!(close(fast.value, oracle.value, 1e-8), "matrix:\n{a}");
            assert!(close(fast.value, spectral, 1e-8), "matrix:\n{a}");
            let exact = gdet_exact_oracle(&a).unwrap();
            let m2 = exact.magnitude_squared.to_f64().unwrap();
            assert!(
                close(fast.magnitude * fast.magnitude, m2, 1e-6),
                "matrix:\n{a}"
            );
        }
    }

    #[test]
    fn square_matrices_reduce_to_the_determinant() {
        // Reference determinant recomputed here by cofactor expansion, kept
        // independent of the elimination used inside the oracles.
        fn det_cofactor(a: &Matrix) -> f64 {
            let n = a.rows();
            if n == 1 {
                return a.get(1, 1);
            }
            let mut acc = 0.0;
            for j in 1..=n {
                let minor: Vec<Vec<f64>> = (2..=n)
                    .map(|i| {
                        (1..=n)
                            .filter(|&c| c != j)
                            .map(|c| a.get(i, c))
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
                acc += sign * a.get(1, j) * det_cofactor(&Matrix::from_nested(minor));
            }
            acc
        }

        let mut rng = TestRng::new(0x5eed_0013);
        for _ in 0..200 {
            let n = rng.range(1, 6);
            let a = rng.int_matrix(n, n, 3);
            let expected = det_cofactor(&a);
            assert!(close(gdet(&a, tol()).value, expected, 1e-9), "matrix:\n{a}");
        }
    }

    #[test]
    fn gdet_of_rectangular_identity_is_exactly_one() {
        for m in 1..=10 {
            for n in 1..=m {
                let d = gdet(&Matrix::rectangular_identity(m, n), tol());
                assert_eq!(d.value, 1.0);
                assert_eq!(d.magnitude, 1.0);
            }
        }
    }

    #[test]
    fn full_rank_iff_left_inverse_exists() {
        let mut rng = TestRng::new(0x5eed_0014);
        for _ in 0..300 {
            let m = rng.range(1, 6);
            let n = rng.range(1, m);
            let a = rng.int_matrix(m, n, 2);
            let d = gdet(&a, tol());
            // Left inverse exists iff the Gram matrix is invertible; when it
            // is, (AᵀA)⁻¹Aᵀ is one.
            let gram_det = det_partial_pivot(&a.gram());
            let invertible = !is_zero(gram_det, a.gram().hadamard_bound(), tol());
            assert_eq!(d.sign != Sign::Zero, invertible, "matrix:\n{a}");
        }
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(7, 7), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(60, 30), 118_264_581_564_861_424_430);
    }
}
