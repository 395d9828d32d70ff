//! Counting and generating integer compositions and partitions whose parts
//! are restricted to an interval `[a, b]` or an arbitrary finite set.
//!
//! ```
//! use rcomp::{count_fixed_k, compositions, CompositionSpec, GeneratorKind};
//!
//! let spec = CompositionSpec::interval(6, 5, 1, 3).unwrap();
//! assert_eq!(count_fixed_k(spec.n, spec.k, &spec.domain), 5u32.into());
//!
//! let (all, stats) = compositions(&spec, GeneratorKind::Successor).unwrap();
//! assert_eq!(all.len(), 5);
//! assert_eq!(stats.node_expansions, 5);
//! ```
//!
//! The guide in `book/` walks through the recursions, the four generators and
//! the benchmark harness.

pub mod bench;
pub mod counting;
pub mod domain;
pub mod error;
pub mod generation;
pub mod oracle;
pub mod transforms;
pub mod verify;

pub use counting::{
    count_any_k, count_fixed_k, count_fixed_k_binomial, count_k_range, count_partitions_any_k,
    count_partitions_binomial, count_partitions_fixed_k, count_partitions_set, BinomialTable, CountTable,
    PartitionCountTable, SetPartitionTable,
};
pub use domain::{
    is_feasible, validate_composition, validate_partition, Composition, CompositionSpec, KRange, PartDomain, PartTuple,
    Partition,
};
pub use error::{Error, Result};
pub use generation::{
    compositions, first_composition, generate, generate_partitions, partitions, successor, GenStats, GeneratorKind,
    LexCompositions, PartitionKind,
};
pub use num_bigint::BigUint;

// Every code block in the guide compiles and runs as a doctest.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/domains.md")]
    mod domains {}
    #[doc = include_str!("../../../book/src/counting.md")]
    mod counting {}
    #[doc = include_str!("../../../book/src/generation.md")]
    mod generation {}
    #[doc = include_str!("../../../book/src/transforms.md")]
    mod transforms {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/benchmarks.md")]
    mod benchmarks {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
