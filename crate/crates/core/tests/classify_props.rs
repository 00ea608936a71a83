use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use triverify_core::arith::{euler_characteristic, OrderPair};
use triverify_core::catalog::{builtin, certify, resolve, NaturalKind};
use triverify_core::chartab::brute_force_triple_count;
use triverify_core::classify::cycles::{cycle_bound, min_cycles, min_cycles_by_parity};
use triverify_core::classify::{
    exhaustive_witness, replay, verify_triple, verify_witness, Budgets, Rule, SearchConfig, Status,
};
use triverify_core::perm::ClassData;
use triverify_core::spectrum::{lemma31_filter, spectrum_of_classes};
use triverify_core::Permutation;

/// (order, cycle count, odd) for every permutation of `n` points, by Heap's algorithm.
fn all_cycle_data(n: usize) -> BTreeSet<(u64, usize, bool)> {
    let mut a: Vec<u32> = (0..n as u32).collect();
    let mut c = vec![0usize; n];
    let mut out = BTreeSet::new();
    let mut record = |a: &[u32]| {
        let p = Permutation::from_images(a.to_vec()).unwrap();
        out.insert((p.order(), p.cycle_lengths().len(), !p.is_even()));
    };
    record(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            record(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn cycle_data_by_type(n: usize) -> BTreeSet<(u64, usize, bool)> {
    partitions(n, n)
        .into_iter()
        .map(|p| {
            let order = p.iter().fold(1u64, |acc, &x| acc.lcm(&(x as u64)));
            (order, p.len(), (n - p.len()) % 2 == 1)
        })
        .collect()
}

fn check_min_cycles(n: usize, data: &BTreeSet<(u64, usize, bool)>) {
    for k in 1..=20u64 {
        let best = |odd: Option<bool>| {
            data.iter()
                .filter(|&&(o, _, par)| o == k && odd.is_none_or(|x| x == par))
                .map(|&(_, c, _)| c)
                .min()
        };
        let by_parity = min_cycles_by_parity(n, k);
        assert_eq!(min_cycles(n, k), best(None), "n = {n}, k = {k}");
        assert_eq!(by_parity.even, best(Some(false)), "n = {n}, k = {k}");
        assert_eq!(by_parity.odd, best(Some(true)), "n = {n}, k = {k}");
    }
}

#[test]
fn min_cycles_matches_every_permutation() {
    for n in 1..=9 {
        check_min_cycles(n, &all_cycle_data(n));
    }
}

#[test]
fn min_cycles_matches_every_cycle_type() {
    for n in 10..=12 {
        check_min_cycles(n, &cycle_data_by_type(n));
    }
}

fn small_config() -> SearchConfig {
    SearchConfig {
        seed: 7,
        budgets: Budgets {
            element_budget: 10_000,
            sample_budget: 2_000,
            pair_budget: 10_000_000,
        },
    }
}

/// Groups of order at most 10^4 and every pair of element orders they contain.
fn sweep() -> Vec<(triverify_core::catalog::CertifiedGroup, ClassData, Vec<(u64, u64)>)> {
    let names = [
        "S_4",
        "S_5",
        "S_6",
        "A_5",
        "A_6",
        "A_7",
        "D_10",
        "D_12",
        "C_6",
        "C_7",
        "PSL_2(7)",
        "PGL_2(5)",
        "PGL_2(7)",
        "PSL_2(11)",
        "M_10",
        "PSL_2(9).2",
        "PSL_2(9).(C_2xC_2)",
        "SL_3(3)",
    ];
    names
        .iter()
        .map(|&name| {
            let g = resolve(name, None).unwrap();
            let classes = ClassData::compute(&g.group, 10_000).unwrap();
            let orders: Vec<u64> = spectrum_of_classes(&classes).into_iter().filter(|&o| o > 1).collect();
            let mut pairs = Vec::new();
            for (i, &m) in orders.iter().enumerate() {
                for &n in &orders[i..] {
                    pairs.push((m, n));
                }
            }
            (g, classes, pairs)
        })
        .collect()
}

#[test]
fn verdicts_agree_with_exhaustive_search() {
    for (g, classes, pairs) in sweep() {
        for (m, n) in pairs {
            let v = verify_triple(&g, m, n, &small_config()).unwrap();
            let witness = exhaustive_witness(&g.group, &classes, m, n).unwrap();
            let label = format!("{} {{{m},{n}}}", g.name());
            assert_ne!(v.status, Status::Inconclusive, "{label}");
            assert_eq!(v.status == Status::ProvenYes, witness.is_some(), "{label}");
            let zero = brute_force_triple_count(&g.group, &classes, m, n)
                .iter()
                .all(|t| t.value == 0);
            if zero && !triverify_core::classify::is_cyclic(&g.group) {
                assert!(witness.is_none(), "{label}");
            }
            if v.refutation_rule == Some(Rule::ZeroStructureConstants) {
                assert!(zero, "{label}");
            }
            if let Some(w) = &v.witness {
                assert!(verify_witness(&g.group, m, n, w).unwrap().valid, "{label}");
                let e = euler_characteristic(g.group.order(), OrderPair::new(m, n).unwrap());
                // gh = 1 (cyclic groups only) falls outside the evenness argument
                if w.g.then(&w.h).is_identity() {
                    continue;
                }
                let chi = e.chi_integer().expect("integral");
                assert!(chi.is_even() && chi <= BigInt::from(2), "{label}: chi = {chi}");
                for (t, _) in triverify_core::arith::factorize(g.group.order()).primes {
                    if t > 2 && lemma31_filter(g.group.order(), OrderPair::new(m, n).unwrap(), t).unwrap() {
                        assert!((&chi % BigInt::from(t)) == BigInt::from(0), "{label}: t = {t}");
                    }
                }
            }
        }
    }
}

#[test]
fn cycle_bound_never_refutes_a_generating_pair() {
    for degree in 5..=7 {
        for kind in [NaturalKind::Symmetric, NaturalKind::Alternating] {
            let entry = match kind {
                NaturalKind::Symmetric => builtin::symmetric(degree),
                NaturalKind::Alternating => builtin::alternating(degree),
            };
            let g = certify(entry.unwrap()).unwrap();
            let classes = ClassData::compute(&g.group, 10_000).unwrap();
            let orders: Vec<u64> = spectrum_of_classes(&classes).into_iter().filter(|&o| o > 1).collect();
            for &m in &orders {
                for &n in &orders {
                    let r = cycle_bound(kind, degree, m, n).unwrap();
                    if r.refuted {
                        assert!(exhaustive_witness(&g.group, &classes, m, n).unwrap().is_none());
                    }
                }
            }
        }
    }
    assert!(cycle_bound(NaturalKind::Symmetric, 3, 3, 3).is_none());
    assert!(cycle_bound(NaturalKind::Symmetric, 4, 3, 4).is_none());
}

#[test]
fn runs_are_deterministic() {
    for (name, m, n) in [("S_7", 10, 7), ("SL_3(3)", 13, 13), ("SU_3(3)", 4, 7), ("M_10", 4, 5)] {
        let g = resolve(name, None).unwrap();
        let config = SearchConfig::default();
        let a = verify_triple(&g, m, n, &config).unwrap().to_json().unwrap();
        let b = verify_triple(&g, m, n, &config).unwrap().to_json().unwrap();
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn seeds_change_random_witnesses_but_not_verdicts() {
    let g = resolve("A_9", None).unwrap();
    let mut witnesses = BTreeSet::new();
    for seed in [1u64, 2, 3] {
        // no class data, so only the random search can answer
        let config = SearchConfig {
            seed,
            budgets: Budgets {
                element_budget: 1,
                ..Budgets::default()
            },
        };
        let v = verify_triple(&g, 10, 7, &config).unwrap();
        assert_eq!(v.status, Status::ProvenYes);
        let w = v.witness.unwrap();
        witnesses.insert((w.g.images().to_vec(), w.h.images().to_vec()));
    }
    assert!(witnesses.len() > 1);
}

#[test]
fn replay_detects_tampering() {
    let g = resolve("S_6", None).unwrap();
    let v = verify_triple(&g, 5, 6, &SearchConfig::default()).unwrap();
    let json = v.to_json().unwrap();
    assert!(replay(&json, |n| resolve(n, None)).unwrap().identical);
    let tampered = json.replacen("\"product_hits\": ", "\"product_hits\": 1", 1);
    assert_ne!(tampered, json);
    assert!(!replay(&tampered, |n| resolve(n, None)).unwrap().identical);
}

#[test]
fn large_groups_without_class_data() {
    let g = resolve("PSU_3(8)", None).unwrap();
    assert!(g.group.order() > &BigUint::from(2_000_000u32));
    let v = verify_triple(&g, 7, 19, &SearchConfig::default()).unwrap();
    assert_eq!(v.status, Status::ProvenYes);
    assert!(
        verify_witness(&g.group, 7, 19, v.witness.as_ref().unwrap())
            .unwrap()
            .valid
    );
}
