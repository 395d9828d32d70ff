use std::collections::BTreeSet;
use std::ops::ControlFlow;

use proptest::prelude::*;

use rcomp::generation::generate;
use rcomp::oracle::brute_compositions;
use rcomp::transforms::{shift_down, shift_up};
use rcomp::{
    compositions, count_fixed_k, count_partitions_set, first_composition, partitions, successor, validate_composition,
    BigUint, CompositionSpec, GeneratorKind, PartDomain, PartitionKind,
};

fn small_interval() -> impl Strategy<Value = (u64, usize, u64, u64)> {
    (0..=5u64, 0..=5u64, 0..=16u64, 0..=6usize).prop_map(|(a, w, n, k)| (n, k, a, a + w))
}

fn small_set() -> impl Strategy<Value = PartDomain> {
    proptest::collection::btree_set(0..=7u64, 1..=4)
        .prop_map(|s: BTreeSet<u64>| PartDomain::explicit(s.into_iter().collect()).unwrap())
}

proptest! {
    #[test]
    fn generators_emit_distinct_members((n, k, a, b) in small_interval()) {
        let spec = CompositionSpec::interval(n, k, a, b).unwrap();
        let count = count_fixed_k(n, k, &spec.domain);
        for kind in GeneratorKind::ALL {
            let (out, stats) = compositions(&spec, kind).unwrap();
            prop_assert!(out.iter().all(|c| validate_composition(c.parts(), &spec)));
            let distinct: BTreeSet<_> = out.iter().cloned().collect();
            prop_assert_eq!(distinct.len(), out.len());
            prop_assert_eq!(BigUint::from(out.len()), count.clone());
            prop_assert_eq!(stats.emitted as usize, out.len());
        }
    }

    #[test]
    fn node_counts_are_deterministic((n, k, a, b) in small_interval()) {
        let spec = CompositionSpec::interval(n, k, a, b).unwrap();
        for kind in GeneratorKind::ALL {
            let first = generate(&spec, kind, |_| ControlFlow::Continue(())).unwrap().node_expansions;
            let second = generate(&spec, kind, |_| ControlFlow::Continue(())).unwrap().node_expansions;
            prop_assert_eq!(first, second);
        }
    }

    #[test]
    fn successor_walk_is_lexicographic(domain in small_set(), n in 0..=14u64, k in 0..=5usize) {
        let spec = CompositionSpec::new(n, k, domain);
        let mut walked = Vec::new();
        let mut cur = first_composition(&spec);
        while let Some(c) = cur {
            cur = successor(&c, &spec).unwrap();
            walked.push(c);
        }
        prop_assert_eq!(walked, brute_compositions(n, k, &spec.domain).unwrap());
    }

    #[test]
    fn partitions_are_sorted_compositions((n, k, a, b) in small_interval()) {
        let spec = CompositionSpec::interval(n, k, a, b).unwrap();
        let p = count_partitions_set(n, k, &spec.domain);
        prop_assert!(p <= count_fixed_k(n, k, &spec.domain));
        for kind in PartitionKind::ALL {
            let (out, _) = partitions(&spec, kind).unwrap();
            prop_assert!(out.iter().all(|q| q.parts().windows(2).all(|w| w[0] >= w[1])));
            prop_assert_eq!(BigUint::from(out.len()), p.clone());
        }
    }

    #[test]
    fn shift_is_a_bijection((n, k, a, b) in small_interval()) {
        let spec = CompositionSpec::interval(n, k, a, b).unwrap();
        if let Ok(shifted) = shift_down(&spec) {
            let lifted: Vec<_> = brute_compositions(shifted.spec.n, k, &shifted.spec.domain)
                .unwrap()
                .iter()
                .map(|c| shift_up(c, shifted.offset))
                .collect();
            prop_assert_eq!(lifted, brute_compositions(n, k, &spec.domain).unwrap());
        }
    }

    #[test]
    fn early_stop_is_honoured((n, k, a, b) in small_interval(), stop in 1..5u64) {
        let spec = CompositionSpec::interval(n, k, a, b).unwrap();
        for kind in GeneratorKind::ALL {
            let mut seen = 0;
            let stats = generate(&spec, kind, |_| {
                seen += 1;
                if seen == stop { ControlFlow::Break(()) } else { ControlFlow::Continue(()) }
            })
            .unwrap();
            prop_assert!(stats.emitted <= stop);
        }
    }
}
