use thiserror::Error;

/// Every failure the library can report. Variants name the offending
/// object (variable, relation, point) where one exists.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a supported prime")]
    InvalidPrime(u64),
    #[error("group factor exponent must be at least 1")]
    InvalidExponent,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("ideal is not contained in the point {0}")]
    PointNotOnSupport(String),
    #[error("ring map does not preserve relation {0}")]
    InvalidRingMap(String),
    #[error("quotient by the unit ideal")]
    UnitQuotient,
    #[error("counit axiom fails for variable {0}")]
    CounitViolation(String),
    #[error("coassociativity fails for variable {0}")]
    CoassociativityViolation(String),
    #[error("coaction does not preserve relation {0}")]
    RelationNotPreserved(String),
    #[error("antipode twist does not invert the action on {0}")]
    AntipodeViolation(String),
    #[error("Hopf axiom {0} fails")]
    HopfViolation(String),
    #[error("T-degree of {0} exceeds the group relation")]
    IllegalTDegree(String),
    #[error("derivation does not descend: relation {0}")]
    InvalidDerivation(String),
    #[error("derivation is not restricted: D^p has images {0}")]
    NotRestricted(String),
    #[error("coefficients are linearly dependent over F_p")]
    DependentCoefficients,
    #[error("{0} is not in the subring of p-th powers")]
    NotInPthPowers(String),
    #[error("polynomial is reducible, factor {0}")]
    Reducible(String),
    #[error("polynomial is not absolutely irreducible, factor over F_(p^{degree}) with defining ideal {witness}")]
    NotAbsolutelyIrreducible { degree: usize, witness: String },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("ring is not a curve (Krull dimension {0})")]
    NotACurve(usize),
    #[error("no invariant reduction element up to s = {s_max}; tried {tried:?}")]
    NoInvariantReduction { s_max: usize, tried: Vec<String> },
    #[error("ideal is not G-stable: {0}")]
    NotGStable(String),
    #[error("step limit {0} exceeded")]
    StepLimitExceeded(usize),
    #[error("derivation is zero")]
    ZeroDerivation,
    #[error("hypothesis failure: {0}")]
    HypothesisFailure(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
