use thiserror::Error;

/// Every failure the library can report.
///
/// Variant names double as the stable `kind` strings emitted by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("variable x{0} appears twice in one monomial")]
    DuplicateVariable(usize),
    #[error("{monomials} monomials but {variables} variables; an invertible polynomial needs as many monomials as variables")]
    NotSquare { monomials: usize, variables: usize },
    #[error("exponent matrix is singular")]
    SingularMatrix,
    #[error("weight q{index} = {weight} lies outside (0, 1/2]")]
    WeightOutOfRange { index: usize, weight: String },
    #[error("not an invertible polynomial: {0}")]
    NotInvertible(String),
    #[error("dimension mismatch: expected {expected} variables, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("group closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("{0} is not a member of the group")]
    NotAMember(String),
    #[error("{0} is not a symmetry of the polynomial")]
    NotASymmetry(String),
    #[error("group is not diagonal: {0}")]
    NotDiagonal(String),
    #[error("group is not of the form H*K: {0}")]
    NotHKProduct(String),
    #[error("group contains the odd pure permutation {0}")]
    OddPermutation(String),
    #[error("group contains non-permutation element {0}")]
    NotPurePermutations(String),
    #[error("state spaces are only built for Fermat polynomials")]
    NotFermat,
    #[error("group is not A-admissible: it does not contain j_W")]
    NotAdmissibleA,
    #[error("group is not B-admissible: {0} has determinant != 1")]
    NotAdmissibleB(String),
    #[error("sector {0} is not indexed by a diagonal symmetry")]
    NotDiagonalSector(String),
    #[error("restricted mirror map failed: {0}")]
    TheoremViolation(String),
    #[error("{0}")]
    Io(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "ParseError",
            Error::DuplicateVariable(_) => "DuplicateVariable",
            Error::NotSquare { .. } => "NotSquare",
            Error::SingularMatrix => "SingularMatrix",
            Error::WeightOutOfRange { .. } => "WeightOutOfRange",
            Error::NotInvertible(_) => "NotInvertible",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::CapExceeded(_) => "CapExceeded",
            Error::NotAMember(_) => "NotAMember",
            Error::NotASymmetry(_) => "NotASymmetry",
            Error::NotDiagonal(_) => "NotDiagonal",
            Error::NotHKProduct(_) => "NotHKProduct",
            Error::OddPermutation(_) => "OddPermutation",
            Error::NotPurePermutations(_) => "NotPurePermutations",
            Error::NotFermat => "NotFermat",
            Error::NotAdmissibleA => "NotAdmissibleA",
            Error::NotAdmissibleB(_) => "NotAdmissibleB",
            Error::NotDiagonalSector(_) => "NotDiagonalSector",
            Error::TheoremViolation(_) => "TheoremViolation",
            Error::Io(_) => "IoError",
            Error::Internal(_) => "InternalError",
        }
    }

    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
