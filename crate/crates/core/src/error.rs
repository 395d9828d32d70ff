use thiserror::Error;

use crate::generation::GeneratorKind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("interval [{a}, {b}] is empty: lower bound exceeds upper bound")]
    InvertedInterval { a: u64, b: u64 },

    #[error("explicit part set must not be empty")]
    EmptyPartSet,

    #[error("explicit part set must be strictly increasing")]
    NotStrictlyIncreasing,

    #[error("k range [{k_min}, {k_max}] is empty")]
    InvertedKRange { k_min: usize, k_max: usize },

    #[error("part set contains 0, so the number of compositions with unrestricted k is infinite")]
    DivergentCount,

    #[error("{kind} requires an interval part domain")]
    RequiresInterval { kind: GeneratorKind },

    #[error("{0} is not an interval domain")]
    NotAnInterval(crate::domain::PartDomain),

    #[error("cannot shift: n = {n} is smaller than k * a = {k} * {a}")]
    ShiftUnderflow { n: u64, k: usize, a: u64 },

    #[error("brute-force enumeration of {domain_size}^{k} tuples exceeds the oracle limit")]
    OracleTooLarge { domain_size: usize, k: usize },

    #[error("{parts:?} is not weakly decreasing")]
    NotWeaklyDecreasing { parts: Vec<u64> },

    #[error("{parts:?} is not a member of the composition set")]
    NotAComposition { parts: Vec<u64> },

    #[error("{0} set of the quadruple restriction is empty")]
    EmptyQuadrupleSet(&'static str),

    #[error("timing series for {algorithm} is missing k = {k}")]
    MissingSeries { algorithm: GeneratorKind, k: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
