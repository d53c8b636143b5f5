mod common;

use std::collections::BTreeSet;
use std::time::Duration;

use num_complex::Complex64;
use proptest::prelude::*;

use common::*;
use motifq_core::qaoa::{run_circuit, sample_and_decode, QaoaParams, Statevector};
use motifq_core::{
    assemble_objective, baseline_greedy, enumerate_embeddings, exact_mis, objective_table, repair_to_feasible,
    shuffle_edges, verify_edge_decomposition, LossMode, ModelOptions, Penalties, RegulatoryNetwork,
};

fn edge_sets(net: &RegulatoryNetwork, name: &str, wildcard: bool) -> BTreeSet<BTreeSet<usize>> {
    enumerate_embeddings(net, &motif(name), wildcard)
        .embeddings
        .iter()
        .map(|e| e.edge_ids.iter().copied().collect())
        .collect()
}

fn motif_name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(MOTIFS.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn enumerator_matches_subset_scan(seed in any::<u64>(), name in motif_name(), wildcard in any::<bool>()) {
        let net = random_instance(seed, &motif(name), 12, wildcard);
        let oracle: BTreeSet<BTreeSet<usize>> = all_embeddings(&net, &motif(name), wildcard).into_iter().collect();
        prop_assert_eq!(edge_sets(&net, name, wildcard), oracle);
    }

    #[test]
    fn shuffle_keeps_degrees_and_labels(seed in any::<u64>(), shuffle_seed in any::<u64>()) {
        let net = random_instance(seed, &motif("bifan"), 14, true);
        let s = shuffle_edges(&net, shuffle_seed);
        let degrees = |g: &RegulatoryNetwork| -> Vec<(usize, usize)> {
            (0..g.node_count()).map(|v| (g.out_degree(v), g.in_degree(v))).collect()
        };
        prop_assert_eq!(degrees(&s), degrees(&net));
        let out_labels = |g: &RegulatoryNetwork| {
            let mut l: Vec<_> = g.edges().iter().map(|e| (e.src, e.relation)).collect();
            l.sort();
            l
        };
        prop_assert_eq!(out_labels(&s), out_labels(&net));
        let pairs: BTreeSet<(usize, usize)> = s.edges().iter().map(|e| (e.src, e.dst)).collect();
        prop_assert_eq!(pairs.len(), s.edge_count());
        prop_assert!(s.edges().iter().all(|e| e.src != e.dst));
    }

    #[test]
    fn table_matches_evaluation(seed in any::<u64>(), name in motif_name()) {
        let net = random_instance(seed, &motif(name), 9, false);
        let obj = assemble_objective(&net, &motif(name), Penalties::default_for(&net), &ModelOptions::default()).unwrap();
        let table = objective_table(&obj.total, 20).unwrap();
        for (b, &v) in table.iter().enumerate() {
            prop_assert_eq!(v, obj.total.evaluate_index(b).unwrap());
        }
    }

    #[test]
    fn greedy_never_beats_exact(seed in any::<u64>()) {
        let embs = random_conflict_instance(seed, 16);
        let exact = exact_mis(&embs, Duration::from_secs(10), 64).unwrap();
        prop_assert_eq!(exact.motif_count, max_disjoint(&node_sets(&embs)));
        for mode in [LossMode::Dynamic, LossMode::Static] {
            prop_assert!(baseline_greedy(&embs, mode).motif_count <= exact.motif_count);
        }
    }

    #[test]
    fn repair_is_feasible_and_shrinks(seed in any::<u64>(), name in motif_name(), pick in any::<u64>()) {
        let m = motif(name);
        let net = random_instance(seed, &m, 12, false);
        let subset: BTreeSet<usize> = (0..net.edge_count()).filter(|e| pick >> e & 1 == 1).collect();
        let repaired = repair_to_feasible(&net, &m, false, &subset);
        prop_assert!(repaired.is_subset(&subset));
        prop_assert!(verify_edge_decomposition(&net, &m, false, &repaired).witness().is_some());
    }

    #[test]
    fn decoding_random_states_is_feasible(seed in any::<u64>(), name in motif_name(), amps in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1024)) {
        let m = motif(name);
        let net = random_instance(seed, &m, 10, false);
        let obj = assemble_objective(&net, &m, Penalties::default_for(&net), &ModelOptions::default()).unwrap();
        let diag = objective_table(&obj.total, 20).unwrap();
        let raw: Vec<Complex64> = amps[..diag.len()].iter().map(|&(re, im)| Complex64::new(re, im)).collect();
        let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        prop_assume!(norm > 1e-6);
        let state = Statevector::from_amplitudes(raw.into_iter().map(|a| a / norm).collect()).unwrap();
        let out = sample_and_decode(&state, 64, &net, &m, false, &obj.vars, &diag, seed).unwrap();
        let verdict = verify_edge_decomposition(&net, &m, false, &out.edges);
        prop_assert_eq!(verdict.witness().map(|w| w.len()), Some(out.motif_count));
    }

    #[test]
    fn circuits_preserve_norm(r in 1usize..=10, gammas in prop::collection::vec(-7.0f64..7.0, 1..4), beta in -4.0f64..4.0, seed in any::<u64>()) {
        let diag: Vec<f64> = (0..1usize << r).map(|b| ((b as u64 ^ seed) % 17) as f64 - 8.0).collect();
        let params = QaoaParams::new(gammas.clone(), vec![beta; gammas.len()]).unwrap();
        let state = run_circuit(&diag, &params).unwrap();
        prop_assert!((state.norm() - 1.0).abs() < 1e-10);
    }
}
