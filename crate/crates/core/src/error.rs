use thiserror::Error;

use crate::frac::Fraction;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("denominator must be positive")]
    ZeroDenominator,
    #[error("fraction {num}/{den} lies outside [0, 1)")]
    ImproperFraction { num: u64, den: u64 },
    #[error("L must contain at least one fraction")]
    EmptyLSet,
    #[error("duplicate fraction {0} in L after reduction")]
    DuplicateFraction(Fraction),
    #[error("ground set size must be positive")]
    ZeroGround,
    #[error("element {elem} outside ground set [{n}]")]
    ElementOutOfRange { elem: u32, n: u32 },
    #[error("duplicate element {0} in set")]
    DuplicateElement(u32),
    #[error("family members must be non-empty sets")]
    EmptyMember,
    #[error("ground set mismatch: {0} vs {1}")]
    GroundMismatch(u32, u32),
    #[error("duplicate member {0} in family")]
    DuplicateMember(String),
    #[error("the pairwise property is defined over distinct sets")]
    IdenticalSets,
    #[error("member {0} has odd cardinality; avoiding families consist of even sets")]
    OddMember(String),
    #[error("epsilon must lie strictly between 0 and 1/2")]
    EpsilonOutOfRange,
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("enumeration over [{n}] exceeds the cap n <= {cap}")]
    EnumerationCap { n: u32, cap: u32 },
    #[error("theorem 2 requires a prime denominator, got {0}")]
    CompositeDenominator(u64),
    #[error("the size window is undefined for a = 0")]
    ZeroNumeratorWindow,
    #[error("delta must be greater than 1")]
    DeltaNotAboveOne,
    #[error("universe has {vertices} vertices, above the budget of {budget}")]
    UniverseTooLarge { vertices: String, budget: usize },
    #[error("exact search supports ground sets up to n = {cap}, got n = {n}")]
    GroundTooLarge { n: u32, cap: u32 },
    #[error("matrix data length {got} does not match {rows}x{cols}")]
    ShapeMismatch { rows: usize, cols: usize, got: usize },
    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),
    #[error("prime {p} must exceed t = {t}")]
    PrimeTooSmall { p: u64, t: u64 },
    #[error("residue must be nonzero mod p")]
    ZeroResidue,
    #[error("member {member} has cardinality {card} != {residue} (mod {p})")]
    WrongResidueClass {
        member: String,
        card: u32,
        residue: u64,
        p: u64,
    },
    #[error("point enumeration over {{0,1}}^{n} exceeds the cap n <= {cap}")]
    EvaluationCap { n: u32, cap: u32 },
    #[error("family is not bisection closed ({violations} violating pairs)")]
    NotBisectionClosed { violations: usize },
    #[error("member {member} of cardinality {card} lies outside the size window")]
    MemberOutsideWindow { member: String, card: u32 },
    #[error("matrix violates the lemma hypotheses: {0}")]
    HypothesisViolation(String),
    #[error("values must be distinct, positive, and ascending")]
    BadChoiceValues,
    #[error("exhaustive mode supports n <= {cap}, got n = {n}")]
    ExhaustiveCap { n: usize, cap: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
