//! Direct first-part recursion: every value `x <= n` is tried as the next
//! part, whether or not the remainder can still be completed.

use std::ops::ControlFlow;

use super::{Probe, Sink};
use crate::domain::CompositionSpec;

pub(super) fn run<P, F>(sink: &mut Sink<'_, P, F>, spec: &CompositionSpec) -> ControlFlow<()>
where
    P: Probe,
    F: FnMut(&[u64]) -> ControlFlow<()>,
{
    let values = spec.domain.values_up_to(spec.n);
    let top = spec.domain.max();
    expand(sink, &values, top, spec.n, 0)
}

fn expand<P, F>(sink: &mut Sink<'_, P, F>, values: &[u64], top: u64, n: u64, pos: usize) -> ControlFlow<()>
where
    P: Probe,
    F: FnMut(&[u64]) -> ControlFlow<()>,
{
    let k = sink.buf.len() - pos;
    if k == 0 {
        if n == 0 {
            return sink.emit();
        }
        return ControlFlow::Continue(());
    }
    for &x in values {
        if x > n {
            break;
        }
        sink.buf[pos] = x;
        sink.expand(n - x, k - 1, top);
        expand(sink, values, top, n - x, pos + 1)?;
    }
    ControlFlow::Continue(())
}
