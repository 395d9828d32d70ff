//! Memoized, arbitrary-precision counting.
//!
//! Compositions are counted with the first-part recursion
//! `c_A(n, k) = sum_{x in A, x <= n} c_A(n - x, k - 1)`, base `c_A(0, 0) = 1`.
//! For interval domains with `a >= 1` this is the familiar
//! `c(n, k, a, b) = sum_{i = max(1, n - b)}^{n - a} c(i, k - 1, a, b)`, and it
//! extends to `a = 0` and to arbitrary finite part sets without change.
//!
//! A second, structurally different recursion splits on how many parts equal
//! the largest value `b`:
//!
//! ```text
//! c_[a,b](n, k) = sum_i C(k, i) * c_[a,b-1](n - b*i, k - i)
//! p_[a,b](n, k) = sum_i          p_[a,b-1](n - b*i, k - i)
//! ```
//!
//! Both routes are kept so that each can check the other.
//!
//! Partitions are counted by their smallest part: a partition of `n` into `k`
//! parts whose smallest part is `x` leaves `k - 1` parts, all at least `x`,
//! summing to `n - x`.
//!
//! All recursions recurse to depth at most `k` (or `n / min(A)` for the any-`k`
//! counts) and memoize every visited state. Tables can be reused across
//! queries; an entry, once stored, is never rewritten.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::domain::{times, KRange, PartDomain};
use crate::error::{Error, Result};

fn indicator(cond: bool) -> BigUint {
    if cond {
        BigUint::one()
    } else {
        BigUint::zero()
    }
}

/// Memo for composition counts over one fixed domain.
#[derive(Debug, Clone)]
pub struct CountTable {
    domain: PartDomain,
    fixed: HashMap<(u64, usize), BigUint>,
    any: HashMap<u64, BigUint>,
}

impl CountTable {
    pub fn new(domain: PartDomain) -> Self {
        CountTable {
            domain,
            fixed: HashMap::new(),
            any: HashMap::new(),
        }
    }

    pub fn domain(&self) -> &PartDomain {
        &self.domain
    }

    /// `|C_A(n, k)|`, the number of `k`-part compositions of `n`.
    pub fn count(&mut self, n: u64, k: usize) -> BigUint {
        if k == 0 {
            return indicator(n == 0);
        }
        let n_wide = n as u128;
        if n_wide < times(k, self.domain.min()) || n_wide > times(k, self.domain.max()) {
            return BigUint::zero();
        }
        if let Some(c) = self.fixed.get(&(n, k)) {
            return c.clone();
        }
        let mut total = BigUint::zero();
        let mut i = 0;
        while let Some(x) = self.domain.value_at(i).filter(|&x| x <= n) {
            total += self.count(n - x, k - 1);
            i += 1;
        }
        self.fixed.insert((n, k), total.clone());
        total
    }

    /// `c_A(n)`: compositions of `n` with any number `k >= 1` of parts.
    ///
    /// Fails with [`Error::DivergentCount`] when `0` is a legal part.
    pub fn count_any_k(&mut self, n: u64) -> Result<BigUint> {
        if self.domain.min() == 0 {
            return Err(Error::DivergentCount);
        }
        if n == 0 {
            return Ok(BigUint::zero());
        }
        Ok(self.any_k(n))
    }

    fn any_k(&mut self, n: u64) -> BigUint {
        if n == 0 {
            return BigUint::one();
        }
        if let Some(c) = self.any.get(&n) {
            return c.clone();
        }
        let mut total = BigUint::zero();
        let mut i = 0;
        while let Some(x) = self.domain.value_at(i).filter(|&x| x <= n) {
            total += self.any_k(n - x);
            i += 1;
        }
        self.any.insert(n, total.clone());
        total
    }

    /// Compositions of `n` whose part count lies in `range`.
    pub fn count_k_range(&mut self, n: u64, range: KRange) -> BigUint {
        range.iter().map(|k| self.count(n, k)).sum()
    }

    /// Number of memoized fixed-`k` entries.
    pub fn len(&self) -> usize {
        self.fixed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fixed.is_empty()
    }

    /// The stored fixed-`k` entries, in no particular order.
    pub fn entries(&self) -> impl Iterator<Item = ((u64, usize), &BigUint)> {
        self.fixed.iter().map(|(key, v)| (*key, v))
    }
}

pub fn count_fixed_k(n: u64, k: usize, domain: &PartDomain) -> BigUint {
    CountTable::new(domain.clone()).count(n, k)
}

pub fn count_any_k(n: u64, domain: &PartDomain) -> Result<BigUint> {
    CountTable::new(domain.clone()).count_any_k(n)
}

pub fn count_k_range(n: u64, range: KRange, domain: &PartDomain) -> BigUint {
    CountTable::new(domain.clone()).count_k_range(n, range)
}

/// Pascal's triangle, grown on demand.
#[derive(Debug, Clone, Default)]
struct Binomials {
    rows: Vec<Vec<BigUint>>,
}

impl Binomials {
    fn get(&mut self, k: usize, i: usize) -> &BigUint {
        while self.rows.len() <= k {
            let next = match self.rows.last() {
                None => vec![BigUint::one()],
                Some(prev) => {
                    let mut row = Vec::with_capacity(prev.len() + 1);
                    row.push(BigUint::one());
                    row.extend(prev.windows(2).map(|w| &w[0] + &w[1]));
                    row.push(BigUint::one());
                    row
                }
            };
            self.rows.push(next);
        }
        &self.rows[k][i]
    }
}

/// Memo for the largest-value split recursions over an interval `[a, b]`.
///
/// States are keyed by `(n, k, top)` where `top` is the current upper bound;
/// each level peels off every copy of `top` and recurses on `[a, top - 1]`.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    a: u64,
    b: u64,
    binomials: Binomials,
    compositions: HashMap<(u64, usize, u64), BigUint>,
    partitions: HashMap<(u64, usize, u64), BigUint>,
}

impl BinomialTable {
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a > b {
            return Err(Error::InvertedInterval { a, b });
        }
        Ok(BinomialTable {
            a,
            b,
            binomials: Binomials::default(),
            compositions: HashMap::new(),
            partitions: HashMap::new(),
        })
    }

    pub fn compositions(&mut self, n: u64, k: usize) -> BigUint {
        self.split_count(n, k, self.b, true)
    }

    pub fn partitions(&mut self, n: u64, k: usize) -> BigUint {
        self.split_count(n, k, self.b, false)
    }

    fn split_count(&mut self, n: u64, k: usize, top: u64, ordered: bool) -> BigUint {
        let a = self.a;
        if top == a {
            return indicator(n as u128 == times(k, a));
        }
        let n_wide = n as u128;
        if n_wide < times(k, a) || n_wide > times(k, top) {
            return BigUint::zero();
        }
        let memo = if ordered { &self.compositions } else { &self.partitions };
        if let Some(c) = memo.get(&(n, k, top)) {
            return c.clone();
        }
        let max_copies = k.min((n / top) as usize);
        let mut total = BigUint::zero();
        for i in 0..=max_copies {
            let rest = n - top * i as u64;
            if (rest as u128) < times(k - i, a) {
                continue;
            }
            let sub = self.split_count(rest, k - i, top - 1, ordered);
            if sub.is_zero() {
                continue;
            }
            if ordered {
                total += self.binomials.get(k, i) * sub;
            } else {
                total += sub;
            }
        }
        let memo = if ordered {
            &mut self.compositions
        } else {
            &mut self.partitions
        };
        memo.insert((n, k, top), total.clone());
        total
    }
}

/// `c(n, k, a, b)` through the largest-value split recursion.
pub fn count_fixed_k_binomial(n: u64, k: usize, a: u64, b: u64) -> Result<BigUint> {
    Ok(BinomialTable::new(a, b)?.compositions(n, k))
}

/// `p(n, k, a, b)` through the largest-value split recursion.
pub fn count_partitions_binomial(n: u64, k: usize, a: u64, b: u64) -> Result<BigUint> {
    Ok(BinomialTable::new(a, b)?.partitions(n, k))
}

/// Memo for interval partition counts with a fixed upper bound.
///
/// The key carries the moving lower bound, since fixing the smallest part `x`
/// forces every remaining part to be at least `x`.
#[derive(Debug, Clone)]
pub struct PartitionCountTable {
    upper: u64,
    memo: HashMap<(u64, usize, u64), BigUint>,
}

impl PartitionCountTable {
    pub fn new(upper: u64) -> Self {
        PartitionCountTable {
            upper,
            memo: HashMap::new(),
        }
    }

    /// Partitions of `n` into exactly `k` parts, each in `[lower, upper]`.
    pub fn count(&mut self, n: u64, k: usize, lower: u64) -> BigUint {
        if k == 0 {
            return indicator(n == 0);
        }
        if lower > self.upper {
            return BigUint::zero();
        }
        let n_wide = n as u128;
        if n_wide < times(k, lower) || n_wide > times(k, self.upper) {
            return BigUint::zero();
        }
        if let Some(c) = self.memo.get(&(n, k, lower)) {
            return c.clone();
        }
        // The smallest part is at most the mean.
        let top = self.upper.min(n / k as u64);
        let mut total = BigUint::zero();
        for x in lower..=top {
            total += self.count(n - x, k - 1, x);
        }
        self.memo.insert((n, k, lower), total.clone());
        total
    }

    /// Partitions of `n` into any number `k >= 1` of parts in `[lower, upper]`.
    pub fn count_any_k(&mut self, n: u64, lower: u64) -> Result<BigUint> {
        if lower == 0 {
            return Err(Error::DivergentCount);
        }
        let k_max = (n / lower) as usize;
        Ok((1..=k_max).map(|k| self.count(n, k, lower)).sum())
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }
}

pub fn count_partitions_fixed_k(n: u64, k: usize, a: u64, b: u64) -> Result<BigUint> {
    if a > b {
        return Err(Error::InvertedInterval { a, b });
    }
    Ok(PartitionCountTable::new(b).count(n, k, a))
}

/// `p(n, a, b)`, partitions of `n` into any number of parts in `[a, b]`.
pub fn count_partitions_any_k(n: u64, a: u64, b: u64) -> Result<BigUint> {
    if a > b {
        return Err(Error::InvertedInterval { a, b });
    }
    PartitionCountTable::new(b).count_any_k(n, a)
}

/// Partition counts over an arbitrary part set.
///
/// Implements `p_A(n, k) = sum_{x in A} p_{A_x}(n - x, k - 1)` where
/// `A_x = { y in A : y >= x }`; `A_x` is represented by its starting index.
#[derive(Debug, Clone)]
pub struct SetPartitionTable {
    domain: PartDomain,
    memo: HashMap<(u64, usize, usize), BigUint>,
}

impl SetPartitionTable {
    pub fn new(domain: &PartDomain) -> Self {
        SetPartitionTable {
            domain: domain.clone(),
            memo: HashMap::new(),
        }
    }

    pub fn count(&mut self, n: u64, k: usize) -> BigUint {
        self.count_from(n, k, 0)
    }

    fn count_from(&mut self, n: u64, k: usize, start: usize) -> BigUint {
        if k == 0 {
            return indicator(n == 0);
        }
        let Some(smallest) = self.domain.value_at(start) else {
            return BigUint::zero();
        };
        let n_wide = n as u128;
        if n_wide < times(k, smallest) || n_wide > times(k, self.domain.max()) {
            return BigUint::zero();
        }
        if let Some(c) = self.memo.get(&(n, k, start)) {
            return c.clone();
        }
        let mut total = BigUint::zero();
        let mut j = start;
        while let Some(x) = self.domain.value_at(j).filter(|&x| x <= n) {
            total += self.count_from(n - x, k - 1, j);
            j += 1;
        }
        self.memo.insert((n, k, start), total.clone());
        total
    }
}

pub fn count_partitions_set(n: u64, k: usize, domain: &PartDomain) -> BigUint {
    SetPartitionTable::new(domain).count(n, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_compositions, brute_partitions};

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn interval(a: u64, b: u64) -> PartDomain {
        PartDomain::interval(a, b).unwrap()
    }

    #[test]
    fn fixed_k_examples() {
        assert_eq!(count_fixed_k(6, 5, &interval(1, 3)), big(5));
        assert_eq!(count_fixed_k(8, 4, &interval(2, 2)), big(1));
        // 84 from brute force over [1,7]^4.
        assert_eq!(count_fixed_k(10, 4, &interval(1, 7)), big(84));
        assert_eq!(
            count_fixed_k(10, 4, &interval(1, 7)),
            big(brute_compositions(10, 4, &interval(1, 7)).unwrap().len() as u64)
        );
    }

    #[test]
    fn zero_parts() {
        assert_eq!(count_fixed_k(0, 0, &interval(1, 3)), big(1));
        assert_eq!(count_fixed_k(3, 0, &interval(1, 3)), big(0));
        assert_eq!(count_fixed_k(0, 3, &interval(0, 2)), big(1));
    }

    #[test]
    fn exceeds_u64() {
        // Independently computed with a Python memoized recursion.
        let expected: BigUint = "53472627342663238203232".parse().unwrap();
        assert_eq!(count_fixed_k(60, 30, &interval(0, 7)), expected);
        assert_eq!(count_fixed_k_binomial(60, 30, 0, 7).unwrap(), expected);
    }

    #[test]
    fn any_k_examples() {
        assert_eq!(count_any_k(4, &interval(1, 2)).unwrap(), big(5));
        assert_eq!(count_any_k(1, &interval(1, 3)).unwrap(), big(1));
        assert_eq!(count_any_k(3, &interval(2, 3)).unwrap(), big(1));
        assert_eq!(count_any_k(0, &interval(1, 3)).unwrap(), big(0));
        assert_eq!(count_any_k(4, &interval(0, 3)), Err(Error::DivergentCount));
    }

    #[test]
    fn fibonacci() {
        let mut table = CountTable::new(interval(1, 2));
        let seq: Vec<BigUint> = (1..=10).map(|n| table.count_any_k(n).unwrap()).collect();
        let expected: Vec<BigUint> = [1u64, 2, 3, 5, 8, 13, 21, 34, 55, 89].iter().map(|&x| big(x)).collect();
        assert_eq!(seq, expected);
    }

    #[test]
    fn k_range_examples() {
        let d = interval(1, 3);
        assert_eq!(count_k_range(6, KRange::new(2, 3).unwrap(), &d), big(8));
        assert_eq!(count_k_range(6, KRange::single(5), &d), big(5));
        assert_eq!(count_k_range(6, KRange::single(0), &d), big(0));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(count_fixed_k_binomial(6, 5, 1, 3).unwrap(), big(5));
        assert_eq!(count_fixed_k_binomial(12, 4, 3, 3).unwrap(), big(1));
        assert_eq!(
            count_fixed_k_binomial(22, 11, 1, 7).unwrap(),
            count_fixed_k(22, 11, &interval(1, 7))
        );
        assert_eq!(count_fixed_k_binomial(22, 11, 1, 7).unwrap(), big(341_705));
        assert!(count_fixed_k_binomial(1, 1, 2, 1).is_err());
    }

    #[test]
    fn partition_examples() {
        assert_eq!(count_partitions_fixed_k(6, 3, 1, 6).unwrap(), big(3));
        assert_eq!(count_partitions_fixed_k(6, 5, 1, 3).unwrap(), big(1));
        assert_eq!(count_partitions_fixed_k(5, 2, 3, 3).unwrap(), big(0));

        assert_eq!(count_partitions_binomial(6, 3, 1, 6).unwrap(), big(3));
        assert_eq!(count_partitions_binomial(6, 5, 1, 3).unwrap(), big(1));
        assert_eq!(count_partitions_binomial(4 * 2, 4, 2, 5).unwrap(), big(1));
    }

    #[test]
    fn partition_any_k_examples() {
        assert_eq!(count_partitions_any_k(4, 1, 4).unwrap(), big(5));
        assert_eq!(count_partitions_any_k(1, 1, 1).unwrap(), big(1));
        // (5) and (3,2).
        assert_eq!(count_partitions_any_k(5, 2, 5).unwrap(), big(2));
        assert_eq!(count_partitions_any_k(5, 0, 5), Err(Error::DivergentCount));
    }

    #[test]
    fn partition_set_examples() {
        let d = PartDomain::explicit(vec![1, 2, 4]).unwrap();
        assert_eq!(count_partitions_set(6, 3, &d), big(2));
        assert_eq!(count_partitions_set(6, 3, &interval(1, 6)), big(3));
        assert_eq!(count_partitions_set(0, 0, &d), big(1));
    }

    #[test]
    fn memo_entries_are_never_rewritten() {
        let mut table = CountTable::new(interval(1, 4));
        table.count(12, 5);
        let before: HashMap<(u64, usize), BigUint> = table.entries().map(|(k, v)| (k, v.clone())).collect();
        table.count(20, 8);
        table.count(9, 3);
        for (key, value) in &before {
            assert_eq!(table.entries().find(|(k, _)| k == key).map(|(_, v)| v), Some(value));
        }
        assert!(table.len() > before.len());
    }

    /// Any-k recursion over the last part's complement, with the single-part
    /// term `I(a <= n <= b)`.
    fn interval_any_k_literal(n: u64, a: u64, b: u64) -> u64 {
        let own = (a <= n && n <= b) as u64;
        let lo = 1.max(n.saturating_sub(b));
        if n < a {
            return own;
        }
        own + (lo..=n - a).map(|i| interval_any_k_literal(i, a, b)).sum::<u64>()
    }

    /// The same shape for partitions: the first part `n - i` caps the rest.
    fn partition_any_k_literal(n: u64, a: u64, b: u64) -> u64 {
        let own = (a <= n && n <= b) as u64;
        if n < a {
            return own;
        }
        let lo = 1.max(n.saturating_sub(b));
        own + (lo..=n - a).map(|i| partition_any_k_literal(i, n - i, b)).sum::<u64>()
    }

    #[test]
    fn literal_interval_forms_agree() {
        for a in 1..=3 {
            for b in a..=5 {
                let mut table = CountTable::new(interval(a, b));
                for n in 1..=14 {
                    assert_eq!(
                        table.count_any_k(n).unwrap(),
                        big(interval_any_k_literal(n, a, b)),
                        "c({n},{a},{b})"
                    );
                    assert_eq!(
                        count_partitions_any_k(n, a, b).unwrap(),
                        big(partition_any_k_literal(n, a, b)),
                        "p({n},{a},{b})"
                    );
                }
            }
        }
    }

    #[test]
    fn oracle_range() {
        for a in 0..=4 {
            for b in a..=4 {
                let d = interval(a, b);
                let mut table = CountTable::new(d.clone());
                for k in 0..=5 {
                    for n in 0..=12 {
                        let comps = brute_compositions(n, k, &d).unwrap().len() as u64;
                        let parts = brute_partitions(n, k, &d).unwrap().len() as u64;
                        assert_eq!(table.count(n, k), big(comps));
                        assert_eq!(count_partitions_fixed_k(n, k, a, b).unwrap(), big(parts));
                        assert_eq!(count_partitions_set(n, k, &d), big(parts));
                        assert!(parts <= comps);
                    }
                }
            }
        }
    }

    #[test]
    fn explicit_sets_against_oracle() {
        for values in [vec![0, 2, 5], vec![1, 3], vec![2, 3, 7], vec![4]] {
            let d = PartDomain::explicit(values).unwrap();
            for k in 0..=5 {
                for n in 0..=16 {
                    let comps = brute_compositions(n, k, &d).unwrap().len() as u64;
                    let parts = brute_partitions(n, k, &d).unwrap().len() as u64;
                    assert_eq!(count_fixed_k(n, k, &d), big(comps), "{d} n={n} k={k}");
                    assert_eq!(count_partitions_set(n, k, &d), big(parts), "{d} n={n} k={k}");
                }
            }
        }
    }
}
