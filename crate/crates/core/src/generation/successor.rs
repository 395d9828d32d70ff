//! Lexicographic successor walk.
//!
//! The walk starts from the lexicographically least composition and moves to
//! the next one by rewriting the current tuple in place: find the rightmost
//! position whose part can grow while the tail can still be completed, grow
//! it by the smallest admissible step, and refill the tail with its least
//! completion. The work per step is proportional to the length of the
//! rewritten tail.
//!
//! For an interval `[a, b]` a tail of length `m` can sum to `s` exactly when
//! `m*a <= s <= m*b`. Explicit part sets have gaps, so a reachability table
//! over `(m, s)` replaces the bound check.

use std::ops::ControlFlow;

use super::{Probe, Sink};
use crate::domain::{times, validate_composition, Composition, CompositionSpec};
use crate::error::{Error, Result};

/// Decides which tails can be completed and produces least completions.
#[derive(Debug, Clone)]
enum Completion {
    /// An interval whose largest possible sum `k*b` fits in `u64`.
    Narrow {
        a: u64,
        b: u64,
    },
    Interval {
        a: u64,
        b: u64,
    },
    Table {
        values: Vec<u64>,
        width: usize,
        reach: Vec<bool>,
    },
}

impl Completion {
    fn new(spec: &CompositionSpec) -> Self {
        if let Some((a, b)) = spec.domain.as_interval() {
            if times(spec.k, b) <= u64::MAX as u128 {
                return Completion::Narrow { a, b };
            }
            return Completion::Interval { a, b };
        }
        let values = spec.domain.values_up_to(spec.n);
        let width = spec.n as usize + 1;
        let mut reach = vec![false; (spec.k + 1) * width];
        reach[0] = true;
        for m in 1..=spec.k {
            for s in 0..width {
                reach[m * width + s] = values
                    .iter()
                    .take_while(|&&x| x as usize <= s)
                    .any(|&x| reach[(m - 1) * width + s - x as usize]);
            }
        }
        Completion::Table { values, width, reach }
    }

    fn completes(&self, m: usize, s: u64) -> bool {
        match self {
            Completion::Narrow { a, b } => m as u64 * a <= s && s <= m as u64 * b,
            Completion::Interval { a, b } => times(m, *a) <= s as u128 && s as u128 <= times(m, *b),
            Completion::Table { width, reach, .. } => (s as usize) < *width && reach[m * width + s as usize],
        }
    }

    /// Writes the least completion of `s` into `tail`. Requires `completes(tail.len(), s)`.
    fn fill_least(&self, tail: &mut [u64], mut s: u64) {
        let m = tail.len();
        match self {
            Completion::Narrow { a, b } => {
                let mut after = m.saturating_sub(1) as u64 * b;
                for slot in tail.iter_mut() {
                    let x = (*a).max(s.saturating_sub(after));
                    *slot = x;
                    s -= x;
                    after = after.saturating_sub(*b);
                }
            }
            Completion::Interval { a, b } => {
                for (idx, slot) in tail.iter_mut().enumerate() {
                    let after = times(m - 1 - idx, *b);
                    let forced = if s as u128 > after {
                        (s as u128 - after) as u64
                    } else {
                        0
                    };
                    let x = (*a).max(forced);
                    *slot = x;
                    s -= x;
                }
            }
            Completion::Table { values, .. } => {
                for (idx, slot) in tail.iter_mut().enumerate() {
                    let after = m - 1 - idx;
                    let x = values
                        .iter()
                        .copied()
                        .take_while(|&x| x <= s)
                        .find(|&x| self.completes(after, s - x))
                        .expect("tail is completable");
                    *slot = x;
                    s -= x;
                }
            }
        }
    }

    /// Moves `parts` to its lexicographic successor. Returns the rewritten
    /// position and the sum of the parts from there on.
    fn advance(&self, parts: &mut [u64]) -> Option<(usize, u64)> {
        let k = parts.len();
        let mut suffix: u64 = 0;
        match self {
            Completion::Narrow { a, b } => {
                let mut tail_min = 0;
                for j in (0..k).rev() {
                    if parts[j] < *b && suffix > tail_min {
                        let span = suffix + parts[j];
                        parts[j] += 1;
                        self.fill_least(&mut parts[j + 1..], suffix - 1);
                        return Some((j, span));
                    }
                    suffix += parts[j];
                    tail_min += a;
                }
            }
            Completion::Interval { a, b } => {
                for j in (0..k).rev() {
                    let tail = k - 1 - j;
                    if parts[j] < *b && suffix as u128 > times(tail, *a) {
                        let span = suffix + parts[j];
                        parts[j] += 1;
                        self.fill_least(&mut parts[j + 1..], suffix - 1);
                        return Some((j, span));
                    }
                    suffix += parts[j];
                }
            }
            Completion::Table { values, .. } => {
                for j in (0..k).rev() {
                    let tail = k - 1 - j;
                    let current = parts[j];
                    let larger = &values[values.partition_point(|&v| v <= current)..];
                    for &y in larger {
                        let step = y - current;
                        if step > suffix {
                            break;
                        }
                        if self.completes(tail, suffix - step) {
                            parts[j] = y;
                            self.fill_least(&mut parts[j + 1..], suffix - step);
                            return Some((j, suffix + current));
                        }
                    }
                    suffix += current;
                }
            }
        }
        None
    }
}

/// Owning iterator over `C_A(n, k)` in lexicographic order.
///
/// ```
/// use rcomp::{CompositionSpec, LexCompositions};
///
/// let spec = CompositionSpec::interval(3, 2, 1, 2).unwrap();
/// let all: Vec<Vec<u64>> = LexCompositions::new(&spec).map(|c| c.into_parts()).collect();
/// assert_eq!(all, vec![vec![1, 2], vec![2, 1]]);
/// ```
#[derive(Debug, Clone)]
pub struct LexCompositions {
    completion: Completion,
    parts: Vec<u64>,
    n: u64,
    started: bool,
    done: bool,
}

impl LexCompositions {
    pub fn new(spec: &CompositionSpec) -> Self {
        LexCompositions {
            completion: Completion::new(spec),
            parts: vec![0; spec.k],
            n: spec.n,
            started: false,
            done: false,
        }
    }

    /// Starts the walk at `current`, which must be a member of the set; the
    /// next call to [`advance`](Self::advance) moves past it.
    fn resume(spec: &CompositionSpec, current: &[u64]) -> Self {
        let mut walk = LexCompositions::new(spec);
        walk.parts.copy_from_slice(current);
        walk.started = true;
        walk
    }

    /// Moves to the first composition, or to the next one. Returns the
    /// rewritten position and the sum from there on, or `None` once exhausted.
    pub fn advance(&mut self) -> Option<(usize, u64)> {
        if self.done {
            return None;
        }
        let step = if self.started {
            self.completion.advance(&mut self.parts)
        } else {
            self.started = true;
            self.completion.completes(self.parts.len(), self.n).then(|| {
                self.completion.fill_least(&mut self.parts, self.n);
                (0, self.n)
            })
        };
        self.done = step.is_none();
        step
    }

    /// The composition the walk currently rests on.
    pub fn current(&self) -> Option<&[u64]> {
        (self.started && !self.done).then_some(&self.parts[..])
    }
}

impl Iterator for LexCompositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        self.advance()?;
        Some(Composition::from(&self.parts[..]))
    }
}

/// The lexicographically least member of `C_A(n, k)`.
pub fn first_composition(spec: &CompositionSpec) -> Option<Composition> {
    LexCompositions::new(spec).next()
}

/// The member of `C_A(n, k)` following `current` in lexicographic order.
pub fn successor(current: &Composition, spec: &CompositionSpec) -> Result<Option<Composition>> {
    if !validate_composition(current.parts(), spec) {
        return Err(Error::NotAComposition {
            parts: current.parts().to_vec(),
        });
    }
    Ok(LexCompositions::resume(spec, current.parts()).next())
}

pub(super) fn run<P, F>(sink: &mut Sink<'_, P, F>, spec: &CompositionSpec) -> ControlFlow<()>
where
    P: Probe,
    F: FnMut(&[u64]) -> ControlFlow<()>,
{
    let completion = Completion::new(spec);
    let k = spec.k;
    let top = spec.domain.max();
    if !completion.completes(k, spec.n) {
        return ControlFlow::Continue(());
    }
    completion.fill_least(&mut sink.buf, spec.n);
    sink.expand(spec.n, k, top);
    sink.emit()?;
    if let Completion::Narrow { a, b } = completion {
        if k >= 2 {
            return run_narrow(sink, &completion, a, b);
        }
    }
    while let Some((pos, span)) = completion.advance(&mut sink.buf) {
        sink.expand(span, k - pos, top);
        sink.emit()?;
    }
    ControlFlow::Continue(())
}

/// The interval walk with its most frequent step inlined: when the last part
/// can give one unit to its left neighbour, that is the successor.
fn run_narrow<P, F>(sink: &mut Sink<'_, P, F>, completion: &Completion, a: u64, b: u64) -> ControlFlow<()>
where
    P: Probe,
    F: FnMut(&[u64]) -> ControlFlow<()>,
{
    let k = sink.buf.len();
    loop {
        let (left, last) = (sink.buf[k - 2], sink.buf[k - 1]);
        if left < b && last > a {
            sink.buf[k - 2] = left + 1;
            sink.buf[k - 1] = last - 1;
            sink.expand(left + last, 2, b);
        } else {
            match completion.advance(&mut sink.buf) {
                Some((pos, span)) => sink.expand(span, k - pos, b),
                None => return ControlFlow::Continue(()),
            }
        }
        sink.emit()?;
    }
}
