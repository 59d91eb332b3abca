use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is not a prime below 2^31")]
    InvalidCharacteristic(u64),
    #[error("division by zero in the coefficient field")]
    DivisionByZero,
    #[error("field mismatch: F_{0} vs F_{1}")]
    FieldMismatch(u32, u32),
    #[error("monomials over {0} and {1} variables cannot be compared")]
    VariableCountMismatch(usize, usize),
    #[error("at most {max} variables are supported, got {got}")]
    TooManyVariables { got: usize, max: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("ideals live in different rings")]
    RingMismatch,
    #[error("q = {q} is not a power of the characteristic {p}")]
    NotPowerOfCharacteristic { q: u64, p: u32 },
    #[error("quotient is not Artinian (ideal is not zero-dimensional)")]
    NotArtinian,
    #[error("quotient is not supported at the origin: {0}")]
    SupportNotAtOrigin(String),
    #[error("degree cap {cap} exceeded (degree {degree}) during {context}")]
    DegreeCap { cap: u32, degree: u32, context: String },
    #[error("ring has Krull dimension {0}; this analysis requires dimension 2")]
    DimensionNotTwo(usize),
    #[error("Hilbert table not stabilized: second difference not constant over the last {window} entries (raise n_max)")]
    NotStabilized { window: usize },
    #[error("v-tail not zero: v({n}) = {value}")]
    VTailNotZero { n: usize, value: i64 },
    #[error("containment J*F_{{n-1}} in F_n violated at n = {0}")]
    ContainmentViolation(usize),
    #[error("Ratliff-Rush chain did not stabilize within {cap} steps")]
    IterationCap { cap: usize },
    #[error("no reduction found after {attempts} attempts with r <= {r_cap}; enlarge p, the attempt count, or supply J")]
    ReductionNotFound { attempts: usize, r_cap: usize },
    #[error("supplied ideal is not a reduction with r <= {r_cap}")]
    NotAReduction { r_cap: usize },
    #[error("multiplicity cross-check failed: colength of reduction {from_reduction} vs fitted e0 {from_fit} (is the ring Cohen-Macaulay?)")]
    CmCrossCheck { from_reduction: i64, from_fit: i64 },
    #[error("zero ideal has no regular element")]
    NoRegularElement,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors raised by a resource guard rather than bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::DegreeCap { .. } | Error::IterationCap { .. })
    }
}
