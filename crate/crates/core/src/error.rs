use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus is not irreducible of the requested degree")]
    ReducibleModulus,
    #[error("z^p - z = c has no root in this field (trace of c is nonzero)")]
    NoRoot,
    #[error("no suitable extension of degree <= {0}")]
    BoundExceeded(usize),
    #[error("cannot embed a degree {src} field into a degree {dst} field")]
    NoEmbedding { src: usize, dst: usize },
    #[error("polynomial is not additive (support outside p-powers)")]
    NotAdditive,
    #[error("polynomial is not of the form X*S(X) + c*X")]
    WrongShape,
    #[error("basis elements are linearly dependent over F_p")]
    DependentBasis,
    #[error("twisted polynomials are not proportional")]
    NotProportional,
    #[error("S_1 has a term in an F-degree not divisible by d")]
    SupportViolation,
    #[error("gamma coefficients are dependent over F_p")]
    DependentGammas,
    #[error("the zero polynomial has no level")]
    ZeroPolynomial,
    #[error("index {0} is divisible by p")]
    BadIndex(u64),
    #[error("classes are dependent over F_p")]
    DependentClasses,
    #[error("translation does not preserve the class span at function {0}")]
    NotStable(usize),
    #[error("representation law fails: {0}")]
    RepresentationLawViolated(String),
    #[error("value {0} out of range")]
    OutOfRange(usize),
    #[error("family does not have maximal jumps")]
    NotMaxJumps,
    #[error("automorphisms do not share ambient field or size")]
    Mismatch,
    #[error("element order exceeds {0}")]
    OrderBoundExceeded(u64),
    #[error("additive polynomial is not separable")]
    NotSeparable,
    #[error("parameter constraint violated: {0}")]
    ParameterConstraintViolated(String),
    #[error("integer coefficient not divisible as required: {0}")]
    DivisibilityViolation(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("check failed [{tag}]: {detail}")]
    CheckFailed { tag: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
