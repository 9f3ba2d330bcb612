use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0} is not a prime")]
    NotPrime(String),

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("polynomial is reducible over the base field: {0}")]
    Reducible(String),

    #[error("field mismatch: `{left}` vs `{right}`")]
    FieldMismatch { left: String, right: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("operation requires a finite field, got `{0}`")]
    NotFinite(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("singular matrix: ad - bc = 0")]
    SingularMatrix,

    #[error("points must be pairwise distinct: {0}")]
    CoincidentPoints(String),

    #[error("boundary point of M_0,n: {0}")]
    BoundaryPoint(String),

    #[error("a pointed rational curve needs at least three points, got {0}")]
    TooFewPoints(usize),

    #[error("constant map: numerator and denominator are proportional")]
    ConstantMap,

    #[error(
        "inseparable map: the Wronskian P'Q - PQ' vanishes identically (not generically etale)"
    )]
    Inseparable,

    #[error("characteristic 3: triple ramification cannot be tame and z^3 is the Frobenius")]
    CharacteristicThree,

    #[error("duplicate branch point {0}")]
    DuplicateBranchPoint(String),

    #[error("adjunction blocked: {0}; use a finite field or the forward mode")]
    AdjunctionBlocked(String),

    #[error("no admissible Mobius candidate in `{0}`; extend the field")]
    CandidatesExhausted(String),

    #[error("field too large for enumeration: {0} points exceed the limit of {1}")]
    FieldTooLarge(String, u64),

    #[error("wild ramification in the input map: {0}")]
    WildRamification(String),

    #[error("operation requires positive characteristic")]
    CharacteristicZero,

    #[error("cuspidal fiber: t = 0 gives a rational curve with a cusp at [0,0,1]")]
    Cuspidal,

    #[error("invariant violated: {0}")]
    InvariantViolated(String),
}

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
