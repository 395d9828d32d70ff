//! Streaming generators for restricted compositions and partitions.
//!
//! Four composition generators are provided, each a different way of walking
//! the same set `C_A(n, k)`:
//!
//! | kind                                   | idea                                             |
//! |----------------------------------------|--------------------------------------------------|
//! | [`GeneratorKind::NaiveSum`]            | pick the first part, recurse on the rest, no pruning |
//! | [`GeneratorKind::BinomialSplit`]       | place every copy of the largest value, recurse on `[a, b-1]` |
//! | [`GeneratorKind::IntervalRecursion`]   | first-part recursion with the interval summation bounds |
//! | [`GeneratorKind::Successor`]           | lexicographic successor, rewriting one composition in place |
//!
//! Generators never materialize their output. Each composition is handed to a
//! visitor as a borrowed slice; the visitor returns [`ControlFlow::Break`] to
//! stop early. Every run reports [`GenStats`].
//!
//! # Node expansions
//!
//! `node_expansions` counts invocations of an algorithm's recursive routine,
//! excluding the root call. The successor walker has no recursion; it counts
//! one expansion per composition it produces. On `n = 6, k = 5, [1, 3]` the
//! counts are 5 (successor), 6 (binomial split), 26 (interval recursion) and
//! 50 (naive sum).

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::domain::{Composition, CompositionSpec, Partition};
use crate::error::{Error, Result};

mod binomial;
mod interval;
mod naive;
mod partitions;
mod successor;

pub use successor::{first_composition, successor, LexCompositions};

/// The composition generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorKind {
    /// Direct first-part recursion over every part value.
    NaiveSum,
    /// Largest-value multiplicity split with position subsets.
    BinomialSplit,
    /// First-part recursion bounded by the interval summation limits.
    IntervalRecursion,
    /// Lexicographic successor walk.
    Successor,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 4] = [
        GeneratorKind::NaiveSum,
        GeneratorKind::BinomialSplit,
        GeneratorKind::IntervalRecursion,
        GeneratorKind::Successor,
    ];

    /// Short name used on the command line and in CSV output.
    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::NaiveSum => "naive",
            GeneratorKind::BinomialSplit => "binomial",
            GeneratorKind::IntervalRecursion => "interval",
            GeneratorKind::Successor => "successor",
        }
    }

    pub fn requires_interval(self) -> bool {
        matches!(self, GeneratorKind::BinomialSplit | GeneratorKind::IntervalRecursion)
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownKind(pub String);

impl fmt::Display for UnknownKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown algorithm `{}`", self.0)
    }
}

impl std::error::Error for UnknownKind {}

impl FromStr for GeneratorKind {
    type Err = UnknownKind;

    fn from_str(s: &str) -> Result<Self, UnknownKind> {
        GeneratorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| UnknownKind(s.to_string()))
    }
}

/// The partition generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartitionKind {
    /// Smallest part first, remaining parts restricted to values at least as large.
    NaiveSuffix,
    /// Multiplicity of the largest value, then recurse on `[a, b-1]`.
    BinomialSplit,
}

impl PartitionKind {
    pub const ALL: [PartitionKind; 2] = [PartitionKind::NaiveSuffix, PartitionKind::BinomialSplit];

    pub fn requires_interval(self) -> bool {
        matches!(self, PartitionKind::BinomialSplit)
    }
}

impl fmt::Display for PartitionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PartitionKind::NaiveSuffix => "naive-suffix",
            PartitionKind::BinomialSplit => "binomial",
        })
    }
}

/// Instrumentation from one generator run.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GenStats {
    pub node_expansions: u64,
    pub emitted: u64,
    pub elapsed: Duration,
}

/// Parameters of one expanded call: `n` still to distribute over `k` parts,
/// no part above `top`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Node {
    pub n: u64,
    pub k: usize,
    pub top: u64,
}

/// Observer for node expansions.
pub trait Probe {
    fn expand(&mut self, node: Node);
}

/// A probe that ignores everything.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoProbe;

impl Probe for NoProbe {
    #[inline(always)]
    fn expand(&mut self, _node: Node) {}
}

impl Probe for Vec<Node> {
    fn expand(&mut self, node: Node) {
        self.push(node);
    }
}

/// Shared state threaded through every generator: the output buffer, the
/// visitor and the counters.
pub(crate) struct Sink<'p, P, F> {
    pub(crate) buf: Vec<u64>,
    probe: &'p mut P,
    visit: F,
    expansions: u64,
    emitted: u64,
}

impl<'p, P: Probe, F: FnMut(&[u64]) -> ControlFlow<()>> Sink<'p, P, F> {
    fn new(k: usize, probe: &'p mut P, visit: F) -> Self {
        Sink {
            buf: vec![0; k],
            probe,
            visit,
            expansions: 0,
            emitted: 0,
        }
    }

    #[inline(always)]
    pub(crate) fn expand(&mut self, n: u64, k: usize, top: u64) {
        self.expansions += 1;
        self.probe.expand(Node { n, k, top });
    }

    #[inline(always)]
    pub(crate) fn emit(&mut self) -> ControlFlow<()> {
        self.emitted += 1;
        (self.visit)(&self.buf)
    }

    fn stats(&self, start: Instant) -> GenStats {
        GenStats {
            node_expansions: self.expansions,
            emitted: self.emitted,
            elapsed: start.elapsed(),
        }
    }
}

/// Streams `C_A(n, k)` to `visit`.
///
/// An infeasible spec yields an empty stream, not an error. Interval-only
/// kinds fail with [`Error::RequiresInterval`] on explicit-set domains.
pub fn generate<F>(spec: &CompositionSpec, kind: GeneratorKind, visit: F) -> Result<GenStats>
where
    F: FnMut(&[u64]) -> ControlFlow<()>,
{
    generate_traced(spec, kind, &mut NoProbe, visit)
}

/// [`generate`], reporting every node expansion to `probe`.
pub fn generate_traced<P, F>(spec: &CompositionSpec, kind: GeneratorKind, probe: &mut P, visit: F) -> Result<GenStats>
where
    P: Probe,
    F: FnMut(&[u64]) -> ControlFlow<()>,
{
    let interval = spec.domain.as_interval();
    if kind.requires_interval() && interval.is_none() {
        return Err(Error::RequiresInterval { kind });
    }
    let start = Instant::now();
    let mut sink = Sink::new(spec.k, probe, visit);
    let _ = match (kind, interval) {
        (GeneratorKind::NaiveSum, _) => naive::run(&mut sink, spec),
        (GeneratorKind::IntervalRecursion, Some((a, b))) => interval::run(&mut sink, spec.n, a, b),
        (GeneratorKind::BinomialSplit, Some((a, b))) => binomial::run(&mut sink, spec.n, a, b),
        (GeneratorKind::Successor, _) => successor::run(&mut sink, spec),
        _ => unreachable!("interval requirement checked above"),
    };
    Ok(sink.stats(start))
}

/// Collects the whole stream. Convenient for tests and small instances.
pub fn compositions(spec: &CompositionSpec, kind: GeneratorKind) -> Result<(Vec<Composition>, GenStats)> {
    let mut out = Vec::new();
    let stats = generate(spec, kind, |c| {
        out.push(Composition::from(c));
        ControlFlow::Continue(())
    })?;
    Ok((out, stats))
}

/// Streams `P_A(n, k)` to `visit`, each partition weakly decreasing.
pub fn generate_partitions<F>(spec: &CompositionSpec, kind: PartitionKind, visit: F) -> Result<GenStats>
where
    F: FnMut(&[u64]) -> ControlFlow<()>,
{
    generate_partitions_traced(spec, kind, &mut NoProbe, visit)
}

pub fn generate_partitions_traced<P, F>(
    spec: &CompositionSpec,
    kind: PartitionKind,
    probe: &mut P,
    visit: F,
) -> Result<GenStats>
where
    P: Probe,
    F: FnMut(&[u64]) -> ControlFlow<()>,
{
    let start = Instant::now();
    let mut sink = Sink::new(spec.k, probe, visit);
    let _ = match (kind, spec.domain.as_interval()) {
        (PartitionKind::NaiveSuffix, _) => partitions::naive_suffix(&mut sink, spec),
        (PartitionKind::BinomialSplit, Some((a, b))) => partitions::binomial(&mut sink, spec.n, a, b),
        (PartitionKind::BinomialSplit, None) => {
            return Err(Error::RequiresInterval {
                kind: GeneratorKind::BinomialSplit,
            })
        }
    };
    Ok(sink.stats(start))
}

pub fn partitions(spec: &CompositionSpec, kind: PartitionKind) -> Result<(Vec<Partition>, GenStats)> {
    let mut out = Vec::new();
    let stats = generate_partitions(spec, kind, |p| {
        out.push(Partition::new_unchecked(p.to_vec()));
        ControlFlow::Continue(())
    })?;
    Ok((out, stats))
}

/// Smallest admissible upper bound for a split level: no value above the
/// remaining sum can be placed, and the bound never drops below `a`.
pub(crate) fn clamp_top(a: u64, top: u64, rest: u64) -> u64 {
    a.max(top.min(rest))
}
