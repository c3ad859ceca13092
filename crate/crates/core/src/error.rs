use thiserror::Error;

/// Errors produced by group construction, algebra arithmetic, and unit-set
/// computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The group spec string contains an atom the catalog does not know.
    #[error("unknown group atom `{0}`")]
    UnknownAtom(String),

    /// The group spec string is not of the form `atom ( \"x\" atom )*`.
    #[error("malformed group spec `{0}`")]
    MalformedSpec(String),

    /// A cyclic atom `c{m}` was requested with `m` not a prime power.
    #[error("cyclic order {0} is not a prime power")]
    NotPrimePower(u64),

    /// The requested group order exceeds the exhaustive-validation bound.
    #[error("group order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: u64, max: u64 },

    /// A multiplication table failed a group axiom during validation.
    #[error("invalid multiplication table for `{name}`: {reason}")]
    InvalidTable { name: String, reason: String },

    /// The characteristic passed to an algebra context is not prime.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// The modular condition |G| = p^k fails for the (group, p) pair.
    #[error("modular condition violated: group order {order} is not a power of {p}")]
    NotModular { order: u64, p: u64 },

    /// Two elements from different algebra contexts were combined.
    #[error("elements belong to different algebra contexts")]
    ContextMismatch,

    /// An operation requiring a normalized unit received an element of
    /// augmentation other than one.
    #[error("element has augmentation {0}, expected 1")]
    NotNormalized(u8),

    /// The geometric inversion series did not terminate within the |G|-step
    /// bound. Unreachable when the modular condition holds.
    #[error("inversion series did not terminate within {0} steps")]
    SeriesDiverged(usize),

    /// A conjugacy class index was out of range.
    #[error("class index {index} out of range ({classes} classes)")]
    ClassIndexOutOfRange { index: usize, classes: usize },

    /// An enumeration would produce more members than the configured cap.
    #[error("set of {needed} members exceeds cap {cap}")]
    CapExceeded { needed: u128, cap: u64 },

    /// A closure grew past the configured cap; `reached` is the partial size
    /// at the point the computation was abandoned.
    #[error("closure exceeded cap {cap} (reached {reached} members)")]
    ClosureCapExceeded { cap: u64, reached: u64 },

    /// The order formula p^(|G|-1) does not fit in a 64-bit report field.
    #[error("unit group order {p}^{exponent} is too large to represent")]
    OrderOverflow { p: u64, exponent: u64 },

    /// A precondition of the central product verification failed.
    #[error("central product check precondition violated: {0}")]
    CentralProductPrecondition(&'static str),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
