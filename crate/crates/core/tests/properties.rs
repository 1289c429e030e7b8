mod common;

use common::oracle_vertex_set;
use hyperzero::eigenstructure::{
    count_minimal_h, expected_n_pairs, minimal_zero_eigenvectors, structure_counts,
};
use hyperzero::generate::random_hypergraph;
use hyperzero::hypergraph::{connected_components, Hypergraph};
use hyperzero::partitions::{
    assignment_from_witness, enumerate_bipartitions, enumerate_multipartitions, find_hm_bipartition,
    partition_from_assignment, validate_bipartition, validate_multipartition, Flavor,
    MultipartitionKind, PartitionWitness, Predicate,
};
use hyperzero::zk_solver::{build_zero_eig_system, enumerate_solutions, solve_mod_k};
use hyperzero::{Kind, ZeroOperator, ZkAssignment};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET: u64 = 200_000;
const OPS: [ZeroOperator; 2] = [ZeroOperator::Laplacian, ZeroOperator::Signless];

fn instance(seed: u64, k_max: usize, n_max: usize) -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(2..=k_max);
    let n = rng.gen_range(k..=n_max.max(k));
    let edges = rng.gen_range(0..=n + 1);
    random_hypergraph(&mut rng, k, n, edges)
}

#[test]
fn two_hundred_random_crosschecks() {
    for seed in 0..200 {
        let h = instance(seed, 5, 9);
        for op in OPS {
            count_minimal_h(&h, op, BUDGET).unwrap_or_else(|e| panic!("seed {seed} {op}: {e}"));
            let counts = structure_counts(&h, op);
            for (id, comp) in connected_components(&h).iter().enumerate() {
                if let Ok(Some(e)) = expected_n_pairs(&h, comp, id, op, BUDGET) {
                    assert_eq!(counts.components[id].n_pair_count, BigUint::from(e), "seed {seed} {op}");
                }
            }
        }
    }
}

#[test]
fn composite_modulus_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    for _ in 0..15 {
        let n = rng.gen_range(6..=6);
        let edges = rng.gen_range(1..=3);
        let h = random_hypergraph(&mut rng, 6, n, edges);
        for op in OPS {
            let counts = structure_counts(&h, op);
            for (c, comp) in counts.components.iter().zip(connected_components(&h).iter()) {
                let o = oracle_vertex_set(&h, &comp.vertices, op);
                assert_eq!(c.solution_count, BigUint::from(o.solutions));
                assert_eq!(c.h_count, BigUint::from(o.h));
                assert_eq!(c.n_pair_count, BigUint::from(o.n_pairs));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shift_and_conjugation_laws(k in 2u64..8, alpha in proptest::collection::vec(0u64..8, 1..8), t in 0u64..8) {
        let alpha: Vec<u64> = alpha.into_iter().map(|a| a % k).collect();
        let a = ZkAssignment::new(k, (0..alpha.len()).collect(), alpha);
        let c = a.shift_canonicalize();
        prop_assert!(c.is_canonical());
        prop_assert_eq!(c.shift_canonicalize(), c.clone());
        prop_assert_eq!(a.shifted(t).shift_canonicalize(), c.clone());
        prop_assert_eq!(a.conjugate().conjugate(), c.clone());
        prop_assert_eq!(a.classify(), a.conjugate().classify());
        prop_assert_eq!(a.classify(), a.shifted(t).classify());
    }

    #[test]
    fn enumerated_solutions_satisfy_system(seed in any::<u64>()) {
        let h = instance(seed, 6, 7);
        for op in OPS {
            for comp in connected_components(&h).iter() {
                let Some(sys) = build_zero_eig_system(&h, comp, op).system().cloned() else { continue };
                let desc = solve_mod_k(&sys);
                if !desc.feasible || desc.solution_count > BigUint::from(20_000u32) {
                    continue;
                }
                let all: Vec<ZkAssignment> = enumerate_solutions(&desc, usize::MAX).unwrap().collect();
                prop_assert_eq!(BigUint::from(all.len()), desc.solution_count.clone());
                let distinct: std::collections::HashSet<_> = all.iter().collect();
                prop_assert_eq!(distinct.len(), all.len());
                for a in &all {
                    prop_assert!(sys.is_satisfied_by(&a.alpha));
                }
            }
        }
    }

    #[test]
    fn classes_round_trip_through_partitions(seed in any::<u64>()) {
        let h = instance(seed, 5, 7);
        let comps = connected_components(&h).components;
        for op in OPS {
            let classes = minimal_zero_eigenvectors(&h, op, BUDGET).unwrap();
            for (i, c) in classes.iter().enumerate() {
                prop_assert_eq!(&c.representative.support, &comps[c.component].vertices);
                let partner = &classes[c.conjugate_partner];
                prop_assert_eq!(partner.conjugate_partner, i);
                prop_assert_eq!(c.kind == Kind::H, c.conjugate_partner == i);
                let w = partition_from_assignment(&c.representative, op, c.component);
                prop_assert_eq!(assignment_from_witness(&w, h.k() as u64), c.representative.clone());
                let comp = &comps[c.component];
                match &w {
                    PartitionWitness::Bipartition(b) => {
                        prop_assert_eq!(validate_bipartition(&h, comp, b), Ok(true));
                    }
                    PartitionWitness::Multipartition(m) => {
                        prop_assert_eq!(validate_multipartition(&h, comp, m, Predicate::Residue), Ok(true));
                    }
                    _ => {}
                }
            }
        }
    }

    #[test]
    fn enumerators_only_return_valid_witnesses(seed in any::<u64>()) {
        let h = instance(seed, 5, 7);
        for (id, comp) in connected_components(&h).iter().enumerate() {
            let flavors: &[Flavor] = if h.k().is_multiple_of(2) { &[Flavor::Hm, Flavor::Odd, Flavor::Even] } else { &[Flavor::Hm] };
            for &f in flavors {
                for w in enumerate_bipartitions(&h, comp, id, f, BUDGET).unwrap() {
                    prop_assert_eq!(validate_bipartition(&h, comp, &w), Ok(true));
                }
            }
            for kind in MultipartitionKind::ALL.into_iter().filter(|m| m.uniformity() == h.k()) {
                for pred in [Predicate::Literal, Predicate::Residue] {
                    for w in enumerate_multipartitions(&h, comp, id, kind, pred, BUDGET).unwrap() {
                        prop_assert_eq!(validate_multipartition(&h, comp, &w, pred), Ok(true));
                        if kind == MultipartitionKind::Tripartite && pred == Predicate::Residue {
                            prop_assert!(w.parts.iter().all(|p| !p.is_empty()));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn hm_search_agrees_with_exhaustive(seed in any::<u64>()) {
        let h = instance(seed, 4, 8);
        for (id, comp) in connected_components(&h).iter().enumerate() {
            let exhaustive = enumerate_bipartitions(&h, comp, id, Flavor::Hm, BUDGET).unwrap();
            let found = find_hm_bipartition(&h, comp, id);
            prop_assert_eq!(found.is_some(), !exhaustive.is_empty() || comp.edges.is_empty());
            if let Some(w) = found {
                prop_assert_eq!(validate_bipartition(&h, comp, &w), Ok(true));
            }
        }
    }
}
