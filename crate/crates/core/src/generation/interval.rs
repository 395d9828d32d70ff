//! First-part recursion over an interval, walking the summation range of
//! `c(n, k, a, b) = sum_{i = max(1, n - b)}^{n - a} c(i, k - 1, a, b)`.
//!
//! `i` is what remains after the first part `n - i`. The lower limit `1`
//! assumes positive parts; with `a = 0` it becomes `0`. Subproblems are
//! entered whenever `i` is in range, with no check that `k - 1` parts can
//! actually reach `i`, so dead branches are explored down to `k = 1`.

use std::ops::ControlFlow;

use super::{Probe, Sink};

pub(super) fn run<P, F>(sink: &mut Sink<'_, P, F>, n: u64, a: u64, b: u64) -> ControlFlow<()>
where
    P: Probe,
    F: FnMut(&[u64]) -> ControlFlow<()>,
{
    if sink.buf.is_empty() {
        if n == 0 {
            return sink.emit();
        }
        return ControlFlow::Continue(());
    }
    expand(sink, a, b, n, 0)
}

fn expand<P, F>(sink: &mut Sink<'_, P, F>, a: u64, b: u64, n: u64, pos: usize) -> ControlFlow<()>
where
    P: Probe,
    F: FnMut(&[u64]) -> ControlFlow<()>,
{
    let k = sink.buf.len() - pos;
    if k == 1 {
        if a <= n && n <= b {
            sink.buf[pos] = n;
            return sink.emit();
        }
        return ControlFlow::Continue(());
    }
    if n < a {
        return ControlFlow::Continue(());
    }
    let floor = a.min(1);
    let lo = floor.max(n.saturating_sub(b));
    for rest in lo..=n - a {
        sink.buf[pos] = n - rest;
        sink.expand(rest, k - 1, b);
        expand(sink, a, b, rest, pos + 1)?;
    }
    ControlFlow::Continue(())
}
