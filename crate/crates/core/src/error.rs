use alloc::string::String;
use core::fmt;

use crate::lattice::Domain;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two objects that must share a dimension do not.
    DimensionMismatch { expected: usize, found: usize },
    /// Two signals live on different grids.
    GridMismatch,
    InvalidGrid(String),
    BinOutOfRange,
    AxisOutOfRange { axis: usize, dim: usize },
    LengthMismatch { expected: usize, found: usize },
    WrongDomain { expected: Domain, found: Domain },
    /// A real-valued input was required.
    ComplexInput,
    /// Composition coefficients and quadrant values disagree.
    InconsistentOperator,
    TooManyDimensions(usize),
    InvalidRegion(String),
    /// The operator is a multiple of the identity where a non-scalar one is needed.
    TrivialOperator,
    ZeroOutsideDisk { index: usize },
    PointOutsideDisk,
    EnvelopeStructure(String),
    EnvelopeSupport(String),
    /// The frequency spacing does not divide the unit backshift.
    IncommensurateSpacing { spacing: f64 },
    NonConvergence { evaluations: usize },
    InvalidArgument(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::GridMismatch => f.write_str("signals are sampled on different grids"),
            Error::InvalidGrid(msg) => write!(f, "invalid grid: {msg}"),
            Error::BinOutOfRange => f.write_str("frequency bin out of range"),
            Error::AxisOutOfRange { axis, dim } => {
                write!(f, "axis {axis} out of range for dimension {dim}")
            }
            Error::LengthMismatch { expected, found } => {
                write!(f, "length mismatch: expected {expected}, found {found}")
            }
            Error::WrongDomain { expected, found } => {
                write!(f, "expected a {expected} domain signal, found {found}")
            }
            Error::ComplexInput => f.write_str("input must be real valued"),
            Error::InconsistentOperator => {
                f.write_str("composition coefficients and quadrant values disagree")
            }
            Error::TooManyDimensions(d) => write!(f, "dimension {d} exceeds the supported maximum"),
            Error::InvalidRegion(msg) => write!(f, "invalid support region: {msg}"),
            Error::TrivialOperator => f.write_str("operator is a multiple of the identity"),
            Error::ZeroOutsideDisk { index } => {
                write!(f, "Blaschke zero #{index} is not inside the unit disk")
            }
            Error::PointOutsideDisk => f.write_str("evaluation point lies outside the closed unit disk"),
            Error::EnvelopeStructure(msg) => write!(f, "envelope structure mismatch: {msg}"),
            Error::EnvelopeSupport(msg) => write!(f, "envelope spectrum outside [-1, 0]: {msg}"),
            Error::IncommensurateSpacing { spacing } => write!(
                f,
                "frequency spacing {spacing} does not divide 1; choose the half extent as a multiple of pi"
            ),
            Error::NonConvergence { evaluations } => {
                write!(f, "quadrature did not converge within {evaluations} evaluations")
            }
            Error::InvalidArgument(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for Error {}
