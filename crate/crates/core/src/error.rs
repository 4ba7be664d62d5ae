use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library reports. [`Error::kind`] gives the stable variant name
/// used in machine-readable CLI output.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("composable pair ({g}, {f}) has no composite")]
    MissingComposite { g: String, f: String },
    #[error("associativity fails on ({h}, {g}, {f}): h∘(g∘f) = {left} but (h∘g)∘f = {right}")]
    BrokenAssociativity { h: String, g: String, f: String, left: String, right: String },
    #[error("identity violation: {0}")]
    BadIdentity(String),
    #[error("malformed category: {0}")]
    MalformedCategory(String),
    #[error("object not found: {0}")]
    ObjectNotFound(String),
    #[error("morphism not found: {0}")]
    MorphismNotFound(String),
    #[error("not a functor: {0}")]
    NotAFunctor(String),
    #[error("quiver has a directed cycle through {0}")]
    CyclicQuiver(String),
    #[error("unknown fixture: {0}")]
    UnknownFixture(String),
    #[error("size guard: {what} has {size} morphisms, limit is {limit}")]
    SizeGuard { what: String, size: usize, limit: usize },
    #[error("grading mismatch: {0}")]
    GradingMismatch(String),
    #[error("not a chain map in degree {degree}: entry ({row}, {col}) differs")]
    NotChainMap { degree: usize, row: usize, col: usize },
    #[error("missing structure map {0}")]
    MissingStructureMap(String),
    #[error("functoriality violation on composable pair ({first}, {second}): {detail}")]
    FunctorialityViolation { first: String, second: String, detail: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("ring is not a field: {0}")]
    RingNotField(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid entry: {0}")]
    InvalidEntry(String),
    #[error("action is not strict: {0}")]
    NotStrict(String),
    #[error("natural system is not cartesian-inverting at {0}")]
    NotCartesianInverting(String),
    #[error("not a fibration: {0}")]
    NotAFibration(String),
    #[error("not a group category: {0}")]
    NotAGroup(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MissingComposite { .. } => "MissingComposite",
            Error::BrokenAssociativity { .. } => "BrokenAssociativity",
            Error::BadIdentity(_) => "BadIdentity",
            Error::MalformedCategory(_) => "MalformedCategory",
            Error::ObjectNotFound(_) => "ObjectNotFound",
            Error::MorphismNotFound(_) => "MorphismNotFound",
            Error::NotAFunctor(_) => "NotAFunctor",
            Error::CyclicQuiver(_) => "CyclicQuiver",
            Error::UnknownFixture(_) => "UnknownFixture",
            Error::SizeGuard { .. } => "SizeGuard",
            Error::GradingMismatch(_) => "GradingMismatch",
            Error::NotChainMap { .. } => "NotChainMap",
            Error::MissingStructureMap(_) => "MissingStructureMap",
            Error::FunctorialityViolation { .. } => "FunctorialityViolation",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::RingMismatch(_) => "RingMismatch",
            Error::RingNotField(_) => "RingNotField",
            Error::InvalidRing(_) => "InvalidRing",
            Error::InvalidEntry(_) => "InvalidEntry",
            Error::NotStrict(_) => "NotStrict",
            Error::NotCartesianInverting(_) => "NotCartesianInverting",
            Error::NotAFibration(_) => "NotAFibration",
            Error::NotAGroup(_) => "NotAGroup",
            Error::Parse { .. } => "ParseError",
            Error::Io(_) => "IoError",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}
