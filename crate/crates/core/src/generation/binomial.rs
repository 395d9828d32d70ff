//! Largest-value split: decide how many parts equal the current top value
//! `b`, choose which positions hold them, and fill the remaining positions
//! from `[a, b - 1]`.
//!
//! A split is only entered when its subproblem `(n - b*i, k - i)` is feasible
//! over `[a, b - 1]`, so every branch ends in at least one composition.
//! Position subsets are enumerated in lexicographic order.

use std::mem;
use std::ops::ControlFlow;

use super::{clamp_top, Probe, Sink};
use crate::domain::times;

pub(super) fn run<P, F>(sink: &mut Sink<'_, P, F>, n: u64, a: u64, b: u64) -> ControlFlow<()>
where
    P: Probe,
    F: FnMut(&[u64]) -> ControlFlow<()>,
{
    let k = sink.buf.len();
    let mut split = Split {
        sink,
        a,
        free: vec![(0..k).collect()],
        chosen: vec![Vec::new()],
    };
    split.level(n, clamp_top(a, b, n), 0)
}

struct Split<'s, 'p, P, F> {
    sink: &'s mut Sink<'p, P, F>,
    a: u64,
    /// Unassigned positions, one list per recursion depth.
    free: Vec<Vec<usize>>,
    /// Current subset of `free` indices receiving the top value, per depth.
    chosen: Vec<Vec<usize>>,
}

impl<P, F> Split<'_, '_, P, F>
where
    P: Probe,
    F: FnMut(&[u64]) -> ControlFlow<()>,
{
    fn level(&mut self, n: u64, top: u64, depth: usize) -> ControlFlow<()> {
        if self.free.len() <= depth + 1 {
            self.free.resize_with(depth + 2, Vec::new);
            self.chosen.resize_with(depth + 2, Vec::new);
        }
        let free = mem::take(&mut self.free[depth]);
        let mut chosen = mem::take(&mut self.chosen[depth]);
        let flow = self.level_with(&free, &mut chosen, n, top, depth);
        self.free[depth] = free;
        self.chosen[depth] = chosen;
        flow
    }

    fn level_with(
        &mut self,
        free: &[usize],
        chosen: &mut Vec<usize>,
        n: u64,
        top: u64,
        depth: usize,
    ) -> ControlFlow<()> {
        let a = self.a;
        let k = free.len();
        if top == a {
            if n as u128 == times(k, a) {
                for &p in free {
                    self.sink.buf[p] = a;
                }
                return self.sink.emit();
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
            let next_top = clamp_top(a, top - 1, rest);
            self.sink.expand(rest, rest_k, next_top);
            if copies == 0 {
                // Nothing placed: the child sees the same free positions.
                self.level_with(free, chosen, rest, next_top, depth)?;
                continue;
            }
            chosen.clear();
            chosen.extend(0..copies);
            if next_top == a {
                self.last_level(free, chosen, top, rest)?;
                continue;
            }
            loop {
                let next_free = &mut self.free[depth + 1];
                next_free.clear();
                let mut c = 0;
                for (idx, &p) in free.iter().enumerate() {
                    if c < copies && chosen[c] == idx {
                        self.sink.buf[p] = top;
                        c += 1;
                    } else {
                        next_free.push(p);
                    }
                }
                self.level(rest, next_top, depth + 1)?;
                if !next_subset(chosen, k) {
                    break;
                }
                self.sink.expand(rest, rest_k, next_top);
            }
        }
        ControlFlow::Continue(())
    }

    /// Every position not holding `top` holds `a`, so each subset is one
    /// composition. Only positions that change between consecutive subsets
    /// are rewritten.
    fn last_level(&mut self, free: &[usize], chosen: &mut [usize], top: u64, rest: u64) -> ControlFlow<()> {
        let (a, k) = (self.a, free.len());
        let rest_k = k - chosen.len();
        for &p in free {
            self.sink.buf[p] = a;
        }
        for &c in chosen.iter() {
            self.sink.buf[free[c]] = top;
        }
        loop {
            self.sink.emit()?;
            let Some(j) = pivot(chosen, k) else {
                return ControlFlow::Continue(());
            };
            for &c in &chosen[j..] {
                self.sink.buf[free[c]] = a;
            }
            advance_from(chosen, j);
            for &c in &chosen[j..] {
                self.sink.buf[free[c]] = top;
            }
            self.sink.expand(rest, rest_k, a);
        }
    }
}

/// Rightmost index of `subset` (sorted indices into `0..k`) that can still
/// move right, or `None` for the last subset of its size.
fn pivot(subset: &[usize], k: usize) -> Option<usize> {
    let size = subset.len();
    (0..size).rev().find(|&j| subset[j] < k - size + j)
}

fn advance_from(subset: &mut [usize], j: usize) {
    subset[j] += 1;
    for t in j + 1..subset.len() {
        subset[t] = subset[t - 1] + 1;
    }
}

/// Advances `subset` to the next subset of the same size in lexicographic
/// order. Returns `false` after the last one.
fn next_subset(subset: &mut [usize], k: usize) -> bool {
    match pivot(subset, k) {
        Some(j) => {
            advance_from(subset, j);
            true
        }
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::next_subset;

    #[test]
    fn subsets_in_lex_order() {
        let mut s = vec![0, 1];
        let mut seen = vec![s.clone()];
        while next_subset(&mut s, 4) {
            seen.push(s.clone());
        }
        assert_eq!(
            seen,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );

        let mut empty: Vec<usize> = vec![];
        assert!(!next_subset(&mut empty, 3));
        let mut full = vec![0, 1, 2];
        assert!(!next_subset(&mut full, 3));
    }
}
