//! Dense real matrices, the numeric-zero policy, and text parsing.
//!
//! Matrices are stored row-major as `f64` with every entry validated finite
//! at construction, so downstream code never branches on NaN. All public
//! row/column indices in this crate are 1-based; out-of-range indices panic
//! on the accessor methods and return [`Error::Dimension`] on the fallible
//! operations.
//!
//! The text format accepted by [`Matrix::parse`] is UTF-8 with one matrix
//! row per line. Fields are separated by runs of spaces/tabs
//! ([`MatrixFormat::Whitespace`]) or by single commas ([`MatrixFormat::Csv`]).
//! Blank lines and lines starting with `#` are ignored, and each field is a
//! decimal literal with optional exponent. [`Matrix::to_text`] renders with
//! 17 significant digits so that `parse(to_text(a))` reproduces `a` bit for
//! bit.

use crate::error::Error;

/// Numeric-zero policy shared by every rank and sign decision.
///
/// A quantity `v` measured at scale `s` counts as zero when
/// `|v| <= max(abs_zero, rel_zero * s)`; see [`is_zero`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Relative threshold, applied against the caller-provided scale.
    pub rel_zero: f64,
    /// Absolute floor, independent of scale.
    pub abs_zero: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            rel_zero: 1e-10,
            abs_zero: 1e-12,
        }
    }
}

impl ToleranceConfig {
    /// Builds a tolerance configuration, rejecting negative or non-finite values.
    pub fn new(rel_zero: f64, abs_zero: f64) -> Result<Self, Error> {
        if !rel_zero.is_finite() || rel_zero < 0.0 {
            return Err(Error::Config(format!(
                "relative tolerance must be finite and nonnegative, got {rel_zero}"
            )));
        }
        if !abs_zero.is_finite() || abs_zero < 0.0 {
            return Err(Error::Config(format!(
                "absolute tolerance must be finite and nonnegative, got {abs_zero}"
            )));
        }
        Ok(ToleranceConfig { rel_zero, abs_zero })
    }
}

/// True iff `value` counts as zero at the given scale:
/// `|value| <= max(tol.abs_zero, tol.rel_zero * scale)`.
pub fn is_zero(value: f64, scale: f64, tol: ToleranceConfig) -> bool {
    debug_assert!(scale >= 0.0);
    value.abs() <= tol.abs_zero.max(tol.rel_zero * scale)
}

/// Field separator convention for matrix text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    /// Fields separated by runs of spaces and tabs.
    Whitespace,
    /// Fields separated by single commas (surrounding blanks are trimmed).
    Csv,
}

/// Dense m-by-n matrix of finite doubles, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Creates a matrix from row-major data.
    ///
    /// Rejects empty shapes, length mismatches, and non-finite entries.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self, Error> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!(
                "matrix shape {rows}x{cols} must have at least one row and column"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "matrix {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        for (k, &v) in data.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    row: k / cols + 1,
                    col: k % cols + 1,
                });
            }
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Creates a matrix from row slices. Panics on ragged, empty, or
    /// non-finite input; intended for literals in tests and examples.
    pub fn from_rows(rows: &[&[f64]]) -> Self {
        assert!(!rows.is_empty(), "matrix needs at least one row");
        let cols = rows[0].len();
        assert!(cols > 0, "matrix needs at least one column");
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row {} has a different width", i + 1);
            data.extend_from_slice(row);
        }
        Matrix::new(rows.len(), cols, data).expect("finite literal entries")
    }

    pub(crate) fn from_nested(rows: Vec<Vec<f64>>) -> Self {
        let m = rows.len();
        let n = rows[0].len();
        let mut data = Vec::with_capacity(m * n);
        for row in &rows {
            debug_assert_eq!(row.len(), n);
            data.extend_from_slice(row);
        }
        Matrix {
            rows: m,
            cols: n,
            data,
        }
    }

    /// All-zero m-by-n matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// Square n-by-n identity.
    pub fn identity(n: usize) -> Self {
        Matrix::rectangular_identity(n, n)
    }

    /// Rectangular m-by-n identity: ones on the main diagonal, zeros elsewhere.
    pub fn rectangular_identity(rows: usize, cols: usize) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows.min(cols) {
            m.data[i * cols + i] = 1.0;
        }
        m
    }

    /// Column vector (m-by-1) from a slice.
    pub fn column_vector(entries: &[f64]) -> Self {
        assert!(!entries.is_empty(), "vector needs at least one entry");
        Matrix::new(entries.len(), 1, entries.to_vec()).expect("finite entries")
    }

    /// Matrix whose columns are the given vectors, in order.
    pub fn from_columns(columns: &[&[f64]]) -> Self {
        assert!(!columns.is_empty(), "matrix needs at least one column");
        let m = columns[0].len();
        assert!(m > 0, "columns need at least one entry");
        let n = columns.len();
        let mut data = vec![0.0; m * n];
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), m, "column {} has a different length", j + 1);
            for (i, &v) in col.iter().enumerate() {
                data[i * n + j] = v;
            }
        }
        Matrix::new(m, n, data).expect("finite entries")
    }

    /// Number of rows (m).
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns (n).
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at row `i`, column `j` (1-based). Panics when out of range.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(
            (1..=self.rows).contains(&i) && (1..=self.cols).contains(&j),
            "index ({i},{j}) out of range for {}x{} matrix",
            self.rows,
            self.cols
        );
        self.data[(i - 1) * self.cols + (j - 1)]
    }

    /// Row `i` (1-based) as a slice.
    pub fn row(&self, i: usize) -> &[f64] {
        assert!((1..=self.rows).contains(&i), "row {i} out of range");
        &self.data[(i - 1) * self.cols..i * self.cols]
    }

    /// Column `j` (1-based) as an owned vector.
    pub fn column(&self, j: usize) -> Vec<f64> {
        assert!((1..=self.cols).contains(&j), "column {j} out of range");
        (0..self.rows)
            .map(|i| self.data[i * self.cols + (j - 1)])
            .collect()
    }

    /// Transpose.
    pub fn transpose(&self) -> Matrix {
        let mut data = vec![0.0; self.data.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Matrix product `self * rhs`.
    pub fn matmul(&self, rhs: &Matrix) -> Result<Matrix, Error> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut data = vec![0.0; self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    data[i * rhs.cols + j] += a * rhs.data[k * rhs.cols + j];
                }
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        })
    }

    /// Gram matrix `AᵀA`, symmetrized to the last bit.
    pub fn gram(&self) -> Matrix {
        let n = self.cols;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let mut s = 0.0;
                for k in 0..self.rows {
                    s += self.data[k * n + i] * self.data[k * n + j];
                }
                data[i * n + j] = s;
                data[j * n + i] = s;
            }
        }
        Matrix {
            rows: n,
            cols: n,
            data,
        }
    }

    /// Submatrix made of the given rows (1-based), in the given order.
    ///
    /// Duplicate or out-of-range indices are dimension errors.
    pub fn row_select(&self, indices: &[usize]) -> Result<Matrix, Error> {
        if indices.is_empty() {
            return Err(Error::Dimension("row selection must be nonempty".into()));
        }
        let mut seen = vec![false; self.rows];
        for &i in indices {
            if i == 0 || i > self.rows {
                return Err(Error::Dimension(format!(
                    "row index {i} out of range 1..={}",
                    self.rows
                )));
            }
            if seen[i - 1] {
                return Err(Error::Dimension(format!("duplicate row index {i}")));
            }
            seen[i - 1] = true;
        }
        let mut data = Vec::with_capacity(indices.len() * self.cols);
        for &i in indices {
            data.extend_from_slice(self.row(i));
        }
        Ok(Matrix {
            rows: indices.len(),
            cols: self.cols,
            data,
        })
    }

    /// Copy with column `j` (1-based) replaced by `column`.
    pub fn with_column_replaced(&self, j: usize, column: &[f64]) -> Result<Matrix, Error> {
        if j == 0 || j > self.cols {
            return Err(Error::Dimension(format!(
                "column index {j} out of range 1..={}",
                self.cols
            )));
        }
        if column.len() != self.rows {
            return Err(Error::Dimension(format!(
                "replacement column has {} entries, expected {}",
                column.len(),
                self.rows
            )));
        }
        let mut out = self.clone();
        for (i, &v) in column.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { row: i + 1, col: j });
            }
            out.data[i * self.cols + (j - 1)] = v;
        }
        Ok(out)
    }

    /// Copy with `column` appended on the right.
    pub fn with_column_appended(&self, column: &[f64]) -> Result<Matrix, Error> {
        if column.len() != self.rows {
            return Err(Error::Dimension(format!(
                "appended column has {} entries, expected {}",
                column.len(),
                self.rows
            )));
        }
        let cols = self.cols + 1;
        let mut data = Vec::with_capacity(self.rows * cols);
        for (i, &v) in column.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    row: i + 1,
                    col: cols,
                });
            }
            data.extend_from_slice(self.row(i + 1));
            data.push(v);
        }
        Ok(Matrix {
            rows: self.rows,
            cols,
            data,
        })
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Euclidean norm of row `i` (1-based).
    pub fn row_norm(&self, i: usize) -> f64 {
        vec_norm(self.row(i))
    }

    /// Product of the row Euclidean norms: the Hadamard upper bound on the
    /// absolute determinant of a square matrix, used as the scale in
    /// determinant zero tests.
    pub(crate) fn hadamard_bound(&self) -> f64 {
        (1..=self.rows).map(|i| self.row_norm(i)).product()
    }

    /// Parses matrix text in the given format. See the module docs for the grammar.
    ///
    /// ```
    /// use gdet::{Matrix, MatrixFormat};
    /// let a = Matrix::parse("3 6\n4 8\n2 1", MatrixFormat::Whitespace).unwrap();
    /// assert_eq!((a.rows(), a.cols()), (3, 2));
    /// assert_eq!(a.get(3, 2), 1.0);
    /// ```
    pub fn parse(text: &str, format: MatrixFormat) -> Result<Matrix, Error> {
        let mut rows: Vec<Vec<f64>> = Vec::new();
        let mut width = 0usize;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = match format {
                MatrixFormat::Whitespace => line.split_whitespace().collect(),
                MatrixFormat::Csv => line.split(',').map(str::trim).collect(),
            };
            let mut row = Vec::with_capacity(fields.len());
            for (fi, field) in fields.iter().enumerate() {
                let value: f64 = field.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    field: Some(fi + 1),
                    message: format!("cannot parse `{field}` as a real number"),
                })?;
                if !value.is_finite() {
                    return Err(Error::Parse {
                        line: line_no,
                        field: Some(fi + 1),
                        message: format!("non-finite entry `{field}` is not admitted"),
                    });
                }
                row.push(value);
            }
            if rows.is_empty() {
                width = row.len();
            } else if row.len() != width {
                return Err(Error::Parse {
                    line: line_no,
                    field: None,
                    message: format!("expected {width} fields, found {}", row.len()),
                });
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::Parse {
                line: 0,
                field: None,
                message: "no matrix rows in input".into(),
            });
        }
        Ok(Matrix::from_nested(rows))
    }

    /// Renders to the whitespace text format with 17 significant digits,
    /// enough for [`Matrix::parse`] to reproduce every entry bit-exactly.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in 1..=self.rows {
            let line: Vec<String> = self.row(i).iter().map(|v| format!("{v:.16e}")).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

impl std::fmt::Display for Matrix {
    /// Human-readable form: one row per line, shortest round-trip numerals.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 1..=self.rows {
            let line: Vec<String> = self.row(i).iter().map(|v| format!("{v}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Euclidean norm of a slice.
pub(crate) fn vec_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Reference determinant by Gaussian elimination with partial pivoting.
/// Used by the oracle paths, never by the QR fast path.
pub(crate) fn det_partial_pivot(a: &Matrix) -> f64 {
    debug_assert_eq!(a.rows(), a.cols());
    let n = a.rows();
    let mut w: Vec<Vec<f64>> = (1..=n).map(|i| a.row(i).to_vec()).collect();
    let mut det = 1.0;
    for k in 0..n {
        let mut piv = k;
        for i in k + 1..n {
            if w[i][k].abs() > w[piv][k].abs() {
                piv = i;
            }
        }
        if w[piv][k] == 0.0 {
            return 0.0;
        }
        if piv != k {
            w.swap(piv, k);
            det = -det;
        }
        det *= w[k][k];
        for i in k + 1..n {
            let f = w[i][k] / w[k][k];
            if f != 0.0 {
                for j in k..n {
                    w[i][j] -= f * w[k][j];
                }
            }
        }
    }
    det
}
