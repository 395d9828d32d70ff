//! Part domains, problem instances and the tuples that solve them.
//!
//! A [`PartDomain`] is the set of values a single part may take: either a
//! contiguous interval `[a, b]` or an explicit finite set. A
//! [`CompositionSpec`] pairs a domain with a target sum `n` and a part count
//! `k`. Every other module in the crate consumes these types.

use std::fmt;

use crate::error::{Error, Result};

/// The set of values a part may take.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PartDomain {
    /// Every integer in `[a, b]`.
    Interval { a: u64, b: u64 },
    /// A strictly increasing, nonempty list of values.
    Explicit(Vec<u64>),
}

impl PartDomain {
    pub fn interval(a: u64, b: u64) -> Result<Self> {
        if a > b {
            return Err(Error::InvertedInterval { a, b });
        }
        Ok(PartDomain::Interval { a, b })
    }

    /// Builds an explicit domain. The values must be strictly increasing.
    pub fn explicit(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyPartSet);
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotStrictlyIncreasing);
        }
        Ok(PartDomain::Explicit(values))
    }

    /// Builds an explicit domain from values in any order, dropping duplicates.
    pub fn from_values<I: IntoIterator<Item = u64>>(values: I) -> Result<Self> {
        let mut values: Vec<u64> = values.into_iter().collect();
        values.sort_unstable();
        values.dedup();
        Self::explicit(values)
    }

    pub fn contains(&self, x: u64) -> bool {
        match self {
            PartDomain::Interval { a, b } => *a <= x && x <= *b,
            PartDomain::Explicit(values) => values.binary_search(&x).is_ok(),
        }
    }

    pub fn min(&self) -> u64 {
        match self {
            PartDomain::Interval { a, .. } => *a,
            PartDomain::Explicit(values) => values[0],
        }
    }

    pub fn max(&self) -> u64 {
        match self {
            PartDomain::Interval { b, .. } => *b,
            PartDomain::Explicit(values) => values[values.len() - 1],
        }
    }

    /// Number of distinct part values (saturating).
    pub fn len(&self) -> usize {
        match self {
            PartDomain::Interval { a, b } => usize::try_from(b - a).unwrap_or(usize::MAX).saturating_add(1),
            PartDomain::Explicit(values) => values.len(),
        }
    }

    /// A domain is never empty; provided for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The `(a, b)` bounds of an interval domain.
    pub fn as_interval(&self) -> Option<(u64, u64)> {
        match self {
            PartDomain::Interval { a, b } => Some((*a, *b)),
            PartDomain::Explicit(_) => None,
        }
    }

    /// All part values in ascending order.
    pub fn values(&self) -> Vec<u64> {
        self.values_up_to(u64::MAX)
    }

    /// The part values not exceeding `limit`, ascending.
    pub fn values_up_to(&self, limit: u64) -> Vec<u64> {
        match self {
            PartDomain::Interval { a, b } => (*a..=(*b).min(limit)).collect(),
            PartDomain::Explicit(values) => values.iter().copied().take_while(|&v| v <= limit).collect(),
        }
    }

    /// The `i`-th smallest part value.
    pub fn value_at(&self, i: usize) -> Option<u64> {
        match self {
            PartDomain::Interval { a, b } => {
                let x = a.checked_add(i as u64)?;
                (x <= *b).then_some(x)
            }
            PartDomain::Explicit(values) => values.get(i).copied(),
        }
    }

    /// The subdomain `{ y in A : y >= x }`, or `None` when it is empty.
    pub fn at_least(&self, x: u64) -> Option<PartDomain> {
        match self {
            PartDomain::Interval { a, b } => {
                let lo = (*a).max(x);
                (lo <= *b).then_some(PartDomain::Interval { a: lo, b: *b })
            }
            PartDomain::Explicit(values) => {
                let start = values.partition_point(|&v| v < x);
                (start < values.len()).then(|| PartDomain::Explicit(values[start..].to_vec()))
            }
        }
    }
}

impl fmt::Display for PartDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartDomain::Interval { a, b } => write!(f, "[{a},{b}]"),
            PartDomain::Explicit(values) => {
                f.write_str("{")?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("}")
            }
        }
    }
}

/// One counting or generation instance: `k` parts from `domain` summing to `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompositionSpec {
    pub n: u64,
    pub k: usize,
    pub domain: PartDomain,
}

impl CompositionSpec {
    pub fn new(n: u64, k: usize, domain: PartDomain) -> Self {
        CompositionSpec { n, k, domain }
    }

    /// Shorthand for an interval instance; fails when `a > b`.
    pub fn interval(n: u64, k: usize, a: u64, b: u64) -> Result<Self> {
        Ok(CompositionSpec::new(n, k, PartDomain::interval(a, b)?))
    }
}

impl fmt::Display for CompositionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} k={} parts in {}", self.n, self.k, self.domain)
    }
}

/// `k * x` without overflow.
pub(crate) fn times(k: usize, x: u64) -> u128 {
    k as u128 * x as u128
}

/// Necessary condition for `spec` to have at least one composition:
/// `k * min(A) <= n <= k * max(A)`. Exact for interval domains.
pub fn is_feasible(spec: &CompositionSpec) -> bool {
    let n = spec.n as u128;
    times(spec.k, spec.domain.min()) <= n && n <= times(spec.k, spec.domain.max())
}

/// True iff `parts` has length `k`, sums to `n` and every part lies in the domain.
pub fn validate_composition(parts: &[u64], spec: &CompositionSpec) -> bool {
    parts.len() == spec.k
        && parts.iter().map(|&p| p as u128).sum::<u128>() == spec.n as u128
        && parts.iter().all(|&p| spec.domain.contains(p))
}

/// Like [`validate_composition`], additionally requiring weakly decreasing parts.
pub fn validate_partition(parts: &[u64], spec: &CompositionSpec) -> bool {
    is_weakly_decreasing(parts) && validate_composition(parts, spec)
}

pub(crate) fn is_weakly_decreasing(parts: &[u64]) -> bool {
    parts.windows(2).all(|w| w[0] >= w[1])
}

/// Tuple types whose parts can be rewritten value by value.
pub trait PartTuple: Sized {
    fn parts(&self) -> &[u64];

    /// Rewrites every part through `f`, failing if `f` does. Callers only
    /// pass monotone maps, so weak order is preserved.
    fn try_map_parts<F: FnMut(u64) -> Option<u64>>(&self, f: F) -> Option<Self>;
}

/// An ordered tuple of parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Composition(Vec<u64>);

impl Composition {
    pub fn new(parts: Vec<u64>) -> Self {
        Composition(parts)
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn into_parts(self) -> Vec<u64> {
        self.0
    }
}

impl From<Vec<u64>> for Composition {
    fn from(parts: Vec<u64>) -> Self {
        Composition(parts)
    }
}

impl From<&[u64]> for Composition {
    fn from(parts: &[u64]) -> Self {
        Composition(parts.to_vec())
    }
}

impl PartTuple for Composition {
    fn parts(&self) -> &[u64] {
        &self.0
    }

    fn try_map_parts<F: FnMut(u64) -> Option<u64>>(&self, f: F) -> Option<Self> {
        self.0
            .iter()
            .copied()
            .map(f)
            .collect::<Option<Vec<_>>>()
            .map(Composition)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

/// A weakly decreasing tuple of parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u64>);

impl Partition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if !is_weakly_decreasing(&parts) {
            return Err(Error::NotWeaklyDecreasing { parts });
        }
        Ok(Partition(parts))
    }

    pub(crate) fn new_unchecked(parts: Vec<u64>) -> Self {
        debug_assert!(is_weakly_decreasing(&parts));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_parts(self) -> Vec<u64> {
        self.0
    }
}

impl TryFrom<Vec<u64>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u64>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Composition {
    fn from(p: Partition) -> Self {
        Composition(p.0)
    }
}

impl PartTuple for Partition {
    fn parts(&self) -> &[u64] {
        &self.0
    }

    fn try_map_parts<F: FnMut(u64) -> Option<u64>>(&self, f: F) -> Option<Self> {
        let parts = self.0.iter().copied().map(f).collect::<Option<Vec<_>>>()?;
        Partition::new(parts).ok()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, parts: &[u64]) -> fmt::Result {
    f.write_str("(")?;
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{p}")?;
    }
    f.write_str(")")
}

/// An inclusive range of part counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KRange {
    k_min: usize,
    k_max: usize,
}

impl KRange {
    pub fn new(k_min: usize, k_max: usize) -> Result<Self> {
        if k_min > k_max {
            return Err(Error::InvertedKRange { k_min, k_max });
        }
        Ok(KRange { k_min, k_max })
    }

    pub fn single(k: usize) -> Self {
        KRange { k_min: k, k_max: k }
    }

    pub fn k_min(&self) -> usize {
        self.k_min
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<usize> {
        self.k_min..=self.k_max
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: u64, k: usize, a: u64, b: u64) -> CompositionSpec {
        CompositionSpec::interval(n, k, a, b).unwrap()
    }

    #[test]
    fn feasibility_examples() {
        assert!(is_feasible(&spec(6, 5, 1, 3)));
        assert!(!is_feasible(&spec(10, 2, 1, 3)));
        assert!(is_feasible(&spec(0, 0, 1, 3)));
        assert!(!is_feasible(&spec(1, 0, 1, 3)));
    }

    #[test]
    fn explicit_feasibility_is_only_a_bound() {
        // 3 = x + y with x, y in {1, 3} has no solution, yet passes the bound.
        let s = CompositionSpec::new(3, 2, PartDomain::explicit(vec![1, 3]).unwrap());
        assert!(is_feasible(&s));
    }

    #[test]
    fn validate_examples() {
        let s = spec(6, 5, 1, 3);
        assert!(validate_composition(&[2, 1, 1, 1, 1], &s));
        assert!(!validate_composition(&[3, 3], &s));
        assert!(!validate_composition(&[4, 2], &spec(6, 2, 1, 3)));
        assert!(validate_composition(&[], &spec(0, 0, 1, 3)));
    }

    #[test]
    fn domain_construction() {
        assert_eq!(PartDomain::interval(3, 1), Err(Error::InvertedInterval { a: 3, b: 1 }));
        assert_eq!(PartDomain::explicit(vec![]), Err(Error::EmptyPartSet));
        assert_eq!(PartDomain::explicit(vec![1, 1]), Err(Error::NotStrictlyIncreasing));
        assert_eq!(PartDomain::explicit(vec![2, 1]), Err(Error::NotStrictlyIncreasing));
        assert_eq!(
            PartDomain::from_values([4, 1, 2, 4]).unwrap(),
            PartDomain::Explicit(vec![1, 2, 4])
        );
    }

    #[test]
    fn membership_agrees_with_values() {
        let domains = [
            PartDomain::interval(0, 0).unwrap(),
            PartDomain::interval(2, 5).unwrap(),
            PartDomain::explicit(vec![0, 3, 4, 9]).unwrap(),
        ];
        for d in &domains {
            let values = d.values();
            assert_eq!(values.len(), d.len());
            for x in 0..12 {
                assert_eq!(d.contains(x), values.contains(&x), "{d} {x}");
            }
            for (i, v) in values.iter().enumerate() {
                assert_eq!(d.value_at(i), Some(*v));
            }
            assert_eq!(d.value_at(values.len()), None);
            assert_eq!(
                d.values_up_to(3),
                values.iter().copied().filter(|&v| v <= 3).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn huge_interval_is_not_materialized() {
        let d = PartDomain::interval(0, u64::MAX).unwrap();
        assert_eq!(d.len(), usize::MAX);
        assert_eq!(d.values_up_to(2), vec![0, 1, 2]);
        assert_eq!(d.value_at(7), Some(7));
    }

    #[test]
    fn at_least_restricts() {
        let d = PartDomain::explicit(vec![1, 2, 4]).unwrap();
        assert_eq!(d.at_least(2), Some(PartDomain::Explicit(vec![2, 4])));
        assert_eq!(d.at_least(5), None);
        let i = PartDomain::interval(1, 3).unwrap();
        assert_eq!(i.at_least(0), Some(i.clone()));
        assert_eq!(i.at_least(3), Some(PartDomain::Interval { a: 3, b: 3 }));
        assert_eq!(i.at_least(4), None);
    }

    #[test]
    fn partition_requires_weak_decrease() {
        assert!(Partition::new(vec![3, 2, 2, 1]).is_ok());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(validate_partition(&[2, 1, 1, 1, 1], &spec(6, 5, 1, 3)));
        assert!(!validate_partition(&[1, 2, 1, 1, 1], &spec(6, 5, 1, 3)));
    }

    #[test]
    fn k_range() {
        assert!(KRange::new(3, 2).is_err());
        assert_eq!(KRange::new(2, 4).unwrap().iter().collect::<Vec<_>>(), vec![2, 3, 4]);
        assert_eq!(KRange::single(5).iter().count(), 1);
    }

    #[test]
    fn display() {
        assert_eq!(spec(6, 5, 1, 3).to_string(), "n=6 k=5 parts in [1,3]");
        assert_eq!(PartDomain::explicit(vec![1, 2, 4]).unwrap().to_string(), "{1,2,4}");
        assert_eq!(Composition::new(vec![1, 2]).to_string(), "(1,2)");
    }
}
