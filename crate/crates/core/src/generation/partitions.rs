//! Partition generators. Parts are written weakly decreasing.

use std::ops::ControlFlow;

use super::{clamp_top, Probe, Sink};
use crate::domain::{times, CompositionSpec};

/// Chooses the smallest part first and restricts the remaining parts to
/// values at least as large. The buffer fills from the right.
pub(super) fn naive_suffix<P, F>(sink: &mut Sink<'_, P, F>, spec: &CompositionSpec) -> ControlFlow<()>
where
    P: Probe,
    F: FnMut(&[u64]) -> ControlFlow<()>,
{
    let values = spec.domain.values_up_to(spec.n);
    let top = spec.domain.max();
    let k = spec.k;
    suffix(sink, &values, top, spec.n, k, 0)
}

fn suffix<P, F>(sink: &mut Sink<'_, P, F>, values: &[u64], top: u64, n: u64, k: usize, start: usize) -> ControlFlow<()>
where
    P: Probe,
    F: FnMut(&[u64]) -> ControlFlow<()>,
{
    if k == 0 {
        if n == 0 {
            return sink.emit();
        }
        return ControlFlow::Continue(());
    }
    for (idx, &x) in values.iter().enumerate().skip(start) {
        if x > n {
            break;
        }
        sink.buf[k - 1] = x;
        sink.expand(n - x, k - 1, top);
        suffix(sink, values, top, n - x, k - 1, idx)?;
    }
    ControlFlow::Continue(())
}

/// Chooses how many parts equal the top value, writes them first, and
/// recurses on `[a, top - 1]`. Infeasible splits are skipped.
pub(super) fn binomial<P, F>(sink: &mut Sink<'_, P, F>, n: u64, a: u64, b: u64) -> ControlFlow<()>
where
    P: Probe,
    F: FnMut(&[u64]) -> ControlFlow<()>,
{
    split(sink, a, clamp_top(a, b, n), n, 0)
}

fn split<P, F>(sink: &mut Sink<'_, P, F>, a: u64, top: u64, n: u64, pos: usize) -> ControlFlow<()>
where
    P: Probe,
    F: FnMut(&[u64]) -> ControlFlow<()>,
{
    let k = sink.buf.len() - pos;
    if top == a {
        if n as u128 == times(k, a) {
            sink.buf[pos..].fill(a);
            return sink.emit();
        }
        return ControlFlow::Continue(());
    }
    let max_copies = k.min((n / top) as usize);
    for copies in 0..=max_copies {
        let rest = n - top * copies as u64;
        let rest_k = k - copies;
        let rest_wide = rest as u128;
        if rest_wide < times(rest_k, a) || rest_wide > times(rest_k, top - 1) {
            continue;
        }
        sink.buf[pos..pos + copies].fill(top);
        let next_top = clamp_top(a, top - 1, rest);
        sink.expand(rest, rest_k, next_top);
        split(sink, a, next_top, rest, pos + copies)?;
    }
    ControlFlow::Continue(())
}
