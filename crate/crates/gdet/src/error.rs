use std::fmt;

/// Errors produced by parsing, shape checks, and the solver front ends.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input text could not be parsed as a matrix. `line` is the 1-based
    /// physical line number (0 when the whole input is at fault); `field`
    /// is the 1-based field index within the line, when known.
    Parse {
        line: usize,
        field: Option<usize>,
        message: String,
    },
    /// A NaN or infinite entry was rejected at construction.
    NonFinite { row: usize, col: usize },
    /// Operand shapes or index arguments are incompatible.
    Dimension(String),
    /// The system has no unique solution (generalized determinant is zero).
    Singular(String),
    /// The right-hand side lies outside the column space of the
    /// coefficient matrix; carries the least-squares residual norm.
    Inconsistent { residual: f64 },
    /// Basis vectors passed to a membership test are linearly dependent.
    DependentBasis,
    /// QR factorization requires full column rank.
    RankDeficient,
    /// The exact oracle requires integer entries of magnitude at most 2^20.
    NonInteger { row: usize, col: usize, value: f64 },
    /// An enumeration guard was exceeded on an oracle path.
    Capacity(String),
    /// Invalid configuration value (e.g. a negative or non-finite tolerance).
    Config(String),
    /// A file could not be read (command-line front end only).
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse {
                line,
                field,
                message,
            } => match (line, field) {
                (0, _) => write!(f, "parse error: {message}"),
                (l, None) => write!(f, "parse error at line {l}: {message}"),
                (l, Some(c)) => write!(f, "parse error at line {l}, field {c}: {message}"),
            },
            Error::NonFinite { row, col } => {
                write!(f, "non-finite entry at row {row}, column {col}")
            }
            Error::Dimension(msg) => write!(f, "dimension error: {msg}"),
            Error::Singular(msg) => write!(f, "singular system: {msg}"),
            Error::Inconsistent { residual } => write!(
                f,
                "inconsistent system: right-hand side is outside the column space \
                 (least-squares residual {residual:e})"
            ),
            Error::DependentBasis => write!(f, "basis vectors are linearly dependent"),
            Error::RankDeficient => write!(f, "matrix is rank deficient within tolerance"),
            Error::NonInteger { row, col, value } => write!(
                f,
                "entry {value} at row {row}, column {col} is not an integer of magnitude <= 2^20"
            ),
            Error::Capacity(msg) => write!(f, "capacity guard exceeded: {msg}"),
            Error::Config(msg) => write!(f, "invalid configuration: {msg}"),
            Error::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for Error {}
