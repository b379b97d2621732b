use alloc::string::String;
use core::fmt;

/// Errors raised by the computations in this crate.
///
/// Every variant names the violated precondition so front ends can print a
/// one-line diagnostic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A literal (rational, eps-polynomial, weight list) failed to parse.
    Parse(String),
    /// Two vectors that must have equal length do not.
    LengthMismatch { expected: usize, found: usize },
    /// A parabolic weight is not non-decreasing inside `[0, 1]`.
    InvalidWeight(String),
    /// A monomial or class does not satisfy the required degree constraint.
    DegreeMismatch(String),
    /// Any other violated precondition.
    Precondition(String),
    /// `expand_binomial_pole` was asked to expand a zero base.
    ZeroBase,
    /// The expansion region does not order the variables of a base.
    AmbiguousRegion(String),
    /// A coefficient was requested beyond the order to which a series is exact.
    InsufficientTruncation {
        variable: String,
        exact_to: i64,
        needed: i64,
    },
    /// A product would need terms of a factor that is unbounded below.
    UnboundedBelow(String),
    /// Series with different variable lists were combined.
    VariableMismatch,
    /// `invert_series` needs a nonzero constant term.
    ZeroConstantTerm,
    /// The Dynkin map was applied to a non-homogeneous polynomial.
    NonHomogeneous,
    /// An associative polynomial that should be a Lie element is not.
    NotLieElement,
    /// The parabolic weight is not generic for the requested type.
    NonGeneric,
    /// The parabolic weight is not generic in the averaged-subset sense.
    NotStronglyGeneric,
    /// Two evaluation routes that must agree did not.
    RouteMismatch(String),
    /// The requested enumeration is too large to run exhaustively.
    TooLarge(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse(s) => write!(f, "parse error: {s}"),
            Error::LengthMismatch { expected, found } => {
                write!(f, "length mismatch: expected {expected}, found {found}")
            }
            Error::InvalidWeight(s) => write!(f, "invalid parabolic weight: {s}"),
            Error::DegreeMismatch(s) => write!(f, "degree mismatch: {s}"),
            Error::Precondition(s) => write!(f, "precondition violated: {s}"),
            Error::ZeroBase => write!(f, "cannot expand a power of the zero linear form"),
            Error::AmbiguousRegion(s) => write!(f, "ambiguous expansion region: {s}"),
            Error::InsufficientTruncation {
                variable,
                exact_to,
                needed,
            } => write!(
                f,
                "insufficient truncation in {variable}: exact to order {exact_to}, need {needed}"
            ),
            Error::UnboundedBelow(v) => {
                write!(f, "product needs a lower bound on the exponents of {v}")
            }
            Error::VariableMismatch => write!(f, "series have different variable lists"),
            Error::ZeroConstantTerm => write!(f, "series has zero constant term"),
            Error::NonHomogeneous => write!(f, "polynomial is not homogeneous"),
            Error::NotLieElement => write!(f, "polynomial is not a Lie element"),
            Error::NonGeneric => write!(f, "parabolic weight is not generic for this type"),
            Error::NotStronglyGeneric => {
                write!(f, "parabolic weight has two equal subset averages")
            }
            Error::RouteMismatch(s) => write!(f, "evaluation routes disagree: {s}"),
            Error::TooLarge(s) => write!(f, "enumeration too large: {s}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
