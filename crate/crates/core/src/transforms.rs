//! The shift bijection and the wrappers over a fixed-`k` generator.
//!
//! Subtracting `a` from every part maps `C_[a,b](n, k)` one-to-one onto
//! `C_[0,b-a](n - k*a, k)`, and likewise for partitions. A generator for
//! lower bound `0` therefore covers every lower bound. The k-range and
//! quadruple wrappers just call a generator repeatedly; they add no work
//! sharing between calls.

use std::collections::BTreeSet;
use std::ops::ControlFlow;
use std::time::Duration;

use crate::domain::{times, CompositionSpec, KRange, PartDomain, PartTuple};
use crate::error::{Error, Result};
use crate::generation::{generate, GenStats, GeneratorKind};

/// A lower-bound-zero instance together with the offset that maps its
/// solutions back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftedSpec {
    pub spec: CompositionSpec,
    pub offset: u64,
}

/// `(n, k, [a, b])` to `(n - k*a, k, [0, b - a])` with offset `a`.
pub fn shift_down(spec: &CompositionSpec) -> Result<ShiftedSpec> {
    let (a, b) = spec
        .domain
        .as_interval()
        .ok_or_else(|| Error::NotAnInterval(spec.domain.clone()))?;
    let floor = times(spec.k, a);
    if (spec.n as u128) < floor {
        return Err(Error::ShiftUnderflow {
            n: spec.n,
            k: spec.k,
            a,
        });
    }
    Ok(ShiftedSpec {
        spec: CompositionSpec::new(spec.n - floor as u64, spec.k, PartDomain::Interval { a: 0, b: b - a }),
        offset: a,
    })
}

/// Adds `offset` to every part. Order is preserved, so this serves
/// compositions and partitions alike.
///
/// # Panics
///
/// If a part overflows `u64`.
pub fn shift_up<T: PartTuple>(tuple: &T, offset: u64) -> T {
    tuple
        .try_map_parts(|p| p.checked_add(offset))
        .expect("part overflows u64")
}

/// Subtracts `offset` from every part, or `None` if some part is smaller.
pub fn shift_down_tuple<T: PartTuple>(tuple: &T, offset: u64) -> Option<T> {
    tuple.try_map_parts(|p| p.checked_sub(offset))
}

/// Generates an interval instance by generating its shifted image and adding
/// the offset back to each output.
pub fn generate_via_shift<F>(spec: &CompositionSpec, kind: GeneratorKind, mut visit: F) -> Result<GenStats>
where
    F: FnMut(&[u64]) -> ControlFlow<()>,
{
    let shifted = match shift_down(spec) {
        Ok(s) => s,
        // Below the minimum sum there is nothing to generate.
        Err(Error::ShiftUnderflow { .. }) => return Ok(GenStats::default()),
        Err(e) => return Err(e),
    };
    let offset = shifted.offset;
    let mut lifted = vec![0; spec.k];
    generate(&shifted.spec, kind, |parts| {
        for (out, &p) in lifted.iter_mut().zip(parts) {
            *out = p + offset;
        }
        visit(&lifted)
    })
}

fn accumulate(total: &mut GenStats, part: GenStats) {
    total.node_expansions += part.node_expansions;
    total.emitted += part.emitted;
    total.elapsed += part.elapsed;
}

/// Runs `kind` once per `k` in `range`, tagging each output with its `k`.
pub fn generate_k_range<F>(
    n: u64,
    range: KRange,
    domain: &PartDomain,
    kind: GeneratorKind,
    mut visit: F,
) -> Result<GenStats>
where
    F: FnMut(usize, &[u64]) -> ControlFlow<()>,
{
    let mut total = GenStats {
        elapsed: Duration::ZERO,
        ..GenStats::default()
    };
    for k in range.iter() {
        let mut stopped = false;
        let spec = CompositionSpec::new(n, k, domain.clone());
        let stats = generate(&spec, kind, |parts| {
            let flow = visit(k, parts);
            stopped = flow.is_break();
            flow
        })?;
        accumulate(&mut total, stats);
        if stopped {
            break;
        }
    }
    Ok(total)
}

/// Sets of sums, part counts, lower bounds and upper bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadrupleSpec {
    sums: BTreeSet<u64>,
    counts: BTreeSet<usize>,
    lows: BTreeSet<u64>,
    highs: BTreeSet<u64>,
}

impl QuadrupleSpec {
    pub fn new(
        sums: impl IntoIterator<Item = u64>,
        counts: impl IntoIterator<Item = usize>,
        lows: impl IntoIterator<Item = u64>,
        highs: impl IntoIterator<Item = u64>,
    ) -> Result<Self> {
        let q = QuadrupleSpec {
            sums: sums.into_iter().collect(),
            counts: counts.into_iter().collect(),
            lows: lows.into_iter().collect(),
            highs: highs.into_iter().collect(),
        };
        for (name, empty) in [
            ("N", q.sums.is_empty()),
            ("K", q.counts.is_empty()),
            ("A", q.lows.is_empty()),
            ("B", q.highs.is_empty()),
        ] {
            if empty {
                return Err(Error::EmptyQuadrupleSet(name));
            }
        }
        Ok(q)
    }

    /// The `(n, k, a, b)` instances in loop order, pairs with `a > b` skipped.
    pub fn instances(&self) -> impl Iterator<Item = Instance> + '_ {
        self.sums.iter().flat_map(move |&n| {
            self.counts.iter().flat_map(move |&k| {
                self.lows.iter().flat_map(move |&a| {
                    self.highs
                        .iter()
                        .filter(move |&&b| a <= b)
                        .map(move |&b| Instance { n, k, a, b })
                })
            })
        })
    }
}

/// One `(n, k, a, b)` cell of a quadruple restriction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Instance {
    pub n: u64,
    pub k: usize,
    pub a: u64,
    pub b: u64,
}

impl Instance {
    pub fn spec(&self) -> CompositionSpec {
        CompositionSpec::new(self.n, self.k, PartDomain::Interval { a: self.a, b: self.b })
    }
}

/// Four nested loops over `q`, calling `kind` for every instance.
pub fn generate_quadruple<F>(q: &QuadrupleSpec, kind: GeneratorKind, mut visit: F) -> Result<GenStats>
where
    F: FnMut(Instance, &[u64]) -> ControlFlow<()>,
{
    let mut total = GenStats::default();
    for inst in q.instances() {
        let mut stopped = false;
        let stats = generate(&inst.spec(), kind, |parts| {
            let flow = visit(inst, parts);
            stopped = flow.is_break();
            flow
        })?;
        accumulate(&mut total, stats);
        if stopped {
            break;
        }
    }
    Ok(total)
}
