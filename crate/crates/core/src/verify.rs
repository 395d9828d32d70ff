//! Exhaustive differential check of every generator and counter against the
//! brute-force oracle.

use std::fmt;

use num_bigint::BigUint;

use crate::counting::{BinomialTable, CountTable, PartitionCountTable};
use crate::domain::{Composition, CompositionSpec, PartDomain, Partition};
use crate::generation::{compositions, partitions, GeneratorKind, PartitionKind};
use crate::oracle::{brute_compositions, brute_partitions};
use crate::transforms::{shift_down, shift_down_tuple, shift_up, Instance};

/// Inclusive upper limits of the sweep: `n <= nmax`, `k <= kmax`,
/// `0 <= a <= b <= bmax`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepBounds {
    pub nmax: u64,
    pub kmax: usize,
    pub bmax: u64,
}

impl Default for SweepBounds {
    fn default() -> Self {
        SweepBounds {
            nmax: 12,
            kmax: 6,
            bmax: 5,
        }
    }
}

/// A composition generator under test, collected into a vector.
pub type ComposeFn = fn(&CompositionSpec, GeneratorKind) -> crate::Result<Vec<Composition>>;

fn library_generator(spec: &CompositionSpec, kind: GeneratorKind) -> crate::Result<Vec<Composition>> {
    compositions(spec, kind).map(|(out, _)| out)
}

/// Test fixture: the library generators, except that the successor walker
/// loses its last output on `n = 5, k = 3, [1, 3]`.
#[doc(hidden)]
pub fn faulty_generator(spec: &CompositionSpec, kind: GeneratorKind) -> crate::Result<Vec<Composition>> {
    let mut out = library_generator(spec, kind)?;
    if kind == GeneratorKind::Successor && *spec == CompositionSpec::new(5, 3, PartDomain::Interval { a: 1, b: 3 }) {
        out.pop();
    }
    Ok(out)
}

/// Sweep outcome when every check passes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Report {
    pub instances: u64,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PASS: {} instances", self.instances)
    }
}

/// The first failing check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub instance: Instance,
    pub check: String,
    pub detail: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FAIL: {}: {}: {}", self.instance.spec(), self.check, self.detail)
    }
}

impl std::error::Error for Mismatch {}

/// Runs the sweep with the library's own generators.
pub fn verify(bounds: SweepBounds) -> Result<Report, Mismatch> {
    Verifier::new(bounds).run()
}

pub struct Verifier {
    bounds: SweepBounds,
    generator: ComposeFn,
}

impl Verifier {
    pub fn new(bounds: SweepBounds) -> Self {
        Verifier {
            bounds,
            generator: library_generator,
        }
    }

    /// Replaces the composition generator under test.
    pub fn with_generator(mut self, generator: ComposeFn) -> Self {
        self.generator = generator;
        self
    }

    pub fn run(&self) -> Result<Report, Mismatch> {
        let SweepBounds { nmax, kmax, bmax } = self.bounds;
        let mut instances = 0;
        for b in 0..=bmax {
            let mut partition_counts = PartitionCountTable::new(b);
            for a in 0..=b {
                let domain = PartDomain::Interval { a, b };
                let mut counts = CountTable::new(domain.clone());
                let mut shifted_counts = CountTable::new(PartDomain::Interval { a: 0, b: b - a });
                let mut binomial = BinomialTable::new(a, b).expect("a <= b");
                for n in 0..=nmax {
                    for k in 0..=kmax {
                        let inst = Instance { n, k, a, b };
                        let mut tables = Tables {
                            counts: &mut counts,
                            shifted: &mut shifted_counts,
                            binomial: &mut binomial,
                            partitions: &mut partition_counts,
                        };
                        self.check(inst, &mut tables)?;
                        instances += 1;
                    }
                }
            }
        }
        Ok(Report { instances })
    }

    fn check(&self, inst: Instance, t: &mut Tables<'_>) -> Result<(), Mismatch> {
        let fail = |check: &str, detail: String| Mismatch {
            instance: inst,
            check: check.to_string(),
            detail,
        };
        let spec = inst.spec();
        let (n, k, a) = (inst.n, inst.k, inst.a);

        let oracle = brute_compositions(n, k, &spec.domain).map_err(|e| fail("oracle", e.to_string()))?;
        for kind in GeneratorKind::ALL {
            let mut got = (self.generator)(&spec, kind).map_err(|e| fail(kind.name(), e.to_string()))?;
            got.sort();
            if got != oracle {
                return Err(fail(
                    &format!("{kind} output"),
                    format!("{} compositions, oracle has {}", got.len(), oracle.len()),
                ));
            }
        }

        let expected = BigUint::from(oracle.len());
        let count = t.counts.count(n, k);
        expect_eq(&count, &expected).map_err(|d| fail("count_fixed_k", d))?;
        expect_eq(&t.binomial.compositions(n, k), &count).map_err(|d| fail("count_fixed_k_binomial", d))?;

        let oracle_p = brute_partitions(n, k, &spec.domain).map_err(|e| fail("oracle", e.to_string()))?;
        for kind in PartitionKind::ALL {
            let (mut got, _) = partitions(&spec, kind).map_err(|e| fail("partitions", e.to_string()))?;
            got.sort();
            if got != oracle_p {
                return Err(fail(
                    &format!("{kind} partitions"),
                    format!("{} partitions, oracle has {}", got.len(), oracle_p.len()),
                ));
            }
        }
        let expected_p = BigUint::from(oracle_p.len());
        expect_eq(&t.partitions.count(n, k, a), &expected_p).map_err(|d| fail("count_partitions_fixed_k", d))?;
        expect_eq(&t.binomial.partitions(n, k), &expected_p).map_err(|d| fail("count_partitions_binomial", d))?;

        match shift_down(&spec) {
            Ok(shifted) => {
                expect_eq(&t.shifted.count(shifted.spec.n, k), &count).map_err(|d| fail("shift transport", d))?;
                for c in &oracle {
                    let round = shift_down_tuple(c, a).map(|d| shift_up(&d, a));
                    if round.as_ref() != Some(c) {
                        return Err(fail("shift round trip", format!("{c} came back as {round:?}")));
                    }
                }
                for p in &oracle_p {
                    let round: Option<Partition> = shift_down_tuple(p, a).map(|d| shift_up(&d, a));
                    if round.as_ref() != Some(p) {
                        return Err(fail("shift round trip", format!("{p} came back as {round:?}")));
                    }
                }
            }
            Err(_) if !oracle.is_empty() => {
                return Err(fail(
                    "shift transport",
                    "instance below the minimum sum is nonempty".into(),
                ));
            }
            Err(_) => {}
        }
        Ok(())
    }
}

struct Tables<'t> {
    counts: &'t mut CountTable,
    shifted: &'t mut CountTable,
    binomial: &'t mut BinomialTable,
    partitions: &'t mut PartitionCountTable,
}

fn expect_eq(got: &BigUint, expected: &BigUint) -> Result<(), String> {
    if got == expected {
        Ok(())
    } else {
        Err(format!("got {got}, expected {expected}"))
    }
}
