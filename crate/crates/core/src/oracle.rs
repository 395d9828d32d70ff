//! Brute-force ground truth.
//!
//! Walks the full `k`-fold product of the domain with an odometer and keeps
//! the tuples that hit the target sum. Nothing here is shared with the
//! counting or generation code, so agreement between the two is evidence.

use crate::domain::{Composition, PartDomain, Partition};
use crate::error::{Error, Result};

/// Upper bound on `|A|^k` the oracle is willing to walk.
pub const ORACLE_LIMIT: u128 = 100_000_000;

/// Every `k`-tuple over `domain` summing to `n`, sorted lexicographically.
pub fn brute_compositions(n: u64, k: usize, domain: &PartDomain) -> Result<Vec<Composition>> {
    let size = domain.len();
    let within_limit = (0..k)
        .try_fold(1u128, |acc, _| {
            acc.checked_mul(size as u128).filter(|&p| p <= ORACLE_LIMIT)
        })
        .is_some();
    if !within_limit {
        return Err(Error::OracleTooLarge { domain_size: size, k });
    }
    if k == 0 {
        return Ok(if n == 0 {
            vec![Composition::default()]
        } else {
            Vec::new()
        });
    }
    let values = domain.values();

    let mut out = Vec::new();
    // digits[i] indexes into `values`; the odometer's last digit turns fastest,
    // which yields tuples in lexicographic order.
    let mut digits = vec![0usize; k];
    loop {
        let sum: u128 = digits.iter().map(|&d| values[d] as u128).sum();
        if sum == n as u128 {
            out.push(Composition::new(digits.iter().map(|&d| values[d]).collect()));
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < size {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// The weakly decreasing members of [`brute_compositions`], sorted.
pub fn brute_partitions(n: u64, k: usize, domain: &PartDomain) -> Result<Vec<Partition>> {
    Ok(brute_compositions(n, k, domain)?
        .into_iter()
        .filter_map(|c| Partition::new(c.into_parts()).ok())
        .collect())
}
