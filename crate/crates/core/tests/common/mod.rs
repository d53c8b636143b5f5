//! Brute-force oracles shared by the integration tests. None of them use the
//! library's matcher, verifier or solvers.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use motifq_core::{builtin_motif, EmbeddingSet, MotifPattern, PseudoBooleanPolynomial, RegulatoryNetwork, Relation};

pub const MOTIFS: [&str; 4] = ["cascade", "ffl", "bifan", "biparallel"];

pub fn motif(name: &str) -> MotifPattern {
    builtin_motif(name).unwrap()
}

fn label_ok(net: Relation, motif: Relation, wildcard: bool) -> bool {
    net == motif || (wildcard && net == Relation::Unknown)
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Is the edge set label-isomorphic (as an edge-induced subgraph) to the motif?
/// Tries every bijection from motif nodes onto the set's endpoints.
pub fn is_embedding(net: &RegulatoryNetwork, m: &MotifPattern, edges: &BTreeSet<usize>, wildcard: bool) -> bool {
    if edges.len() != m.edge_count() {
        return false;
    }
    let nodes: Vec<usize> = edges
        .iter()
        .flat_map(|&e| [net.edge(e).src, net.edge(e).dst])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if nodes.len() != m.size() {
        return false;
    }
    permutations(&nodes).into_iter().any(|perm| {
        let mut image = BTreeSet::new();
        for me in m.edges() {
            let (s, d) = (perm[me.a], perm[me.b]);
            let Some(e) = edges
                .iter()
                .copied()
                .find(|&e| net.edge(e).src == s && net.edge(e).dst == d)
            else {
                return false;
            };
            if !label_ok(net.edge(e).relation, me.relation, wildcard) {
                return false;
            }
            image.insert(e);
        }
        &image == edges
    })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every embedding, found by testing all `|E'|`-subsets of the edges.
pub fn all_embeddings(net: &RegulatoryNetwork, m: &MotifPattern, wildcard: bool) -> Vec<BTreeSet<usize>> {
    combinations(net.edge_count(), m.edge_count())
        .into_iter()
        .map(|c| c.into_iter().collect::<BTreeSet<usize>>())
        .filter(|s| is_embedding(net, m, s, wildcard))
        .collect()
}

fn endpoints(net: &RegulatoryNetwork, edges: &BTreeSet<usize>) -> BTreeSet<usize> {
    edges.iter().flat_map(|&e| [net.edge(e).src, net.edge(e).dst]).collect()
}

/// Can `subset` be written as a union of pairwise node-disjoint embeddings?
/// Exhaustive: every embedding covering the least uncovered edge is tried.
pub fn is_partition(net: &RegulatoryNetwork, embs: &[BTreeSet<usize>], subset: &BTreeSet<usize>) -> bool {
    fn rec(net: &RegulatoryNetwork, embs: &[BTreeSet<usize>], left: &BTreeSet<usize>, used: &BTreeSet<usize>) -> bool {
        let Some(&first) = left.iter().next() else {
            return true;
        };
        embs.iter()
            .filter(|e| e.contains(&first) && e.is_subset(left))
            .any(|e| {
                let nodes = endpoints(net, e);
                if !nodes.is_disjoint(used) {
                    return false;
                }
                let rest: BTreeSet<usize> = left.difference(e).copied().collect();
                let used: BTreeSet<usize> = used.union(&nodes).copied().collect();
                rec(net, embs, &rest, &used)
            })
    }
    rec(net, embs, subset, &BTreeSet::new())
}

/// Size of the largest pairwise node-disjoint family, by trying all subsets.
pub fn max_disjoint(node_sets: &[BTreeSet<usize>]) -> usize {
    assert!(node_sets.len() <= 22, "exhaustive oracle limited to 22 sets");
    let masks: Vec<u128> = node_sets
        .iter()
        .map(|s| {
            s.iter().fold(0u128, |m, &v| {
                assert!(v < 128, "node ids above 127 not supported");
                m | 1 << v
            })
        })
        .collect();
    (0u32..1 << masks.len())
        .filter(|set| {
            let mut used = 0u128;
            (0..masks.len()).filter(|i| set >> i & 1 == 1).all(|i| {
                let ok = used & masks[i] == 0;
                used |= masks[i];
                ok
            })
        })
        .map(|set| set.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn node_sets(embs: &EmbeddingSet) -> Vec<BTreeSet<usize>> {
    embs.embeddings
        .iter()
        .map(|e| e.node_ids.iter().copied().collect())
        .collect()
}

/// Pauli-Z form of a multilinear polynomial: every `x_i` is replaced by
/// `(1 - Z_i)/2` and the products expanded. Keys are Z-index sets.
pub fn z_expansion(poly: &PseudoBooleanPolynomial) -> BTreeMap<Vec<u32>, f64> {
    let mut out: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
    *out.entry(vec![]).or_default() += poly.constant();
    for (vars, coef) in poly.terms() {
        let k = vars.len();
        let scale = coef / f64::from(1u32 << k);
        for mask in 0u32..1 << k {
            let zs: Vec<u32> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| vars[i]).collect();
            let sign = if zs.len().is_multiple_of(2) { 1.0 } else { -1.0 };
            *out.entry(zs).or_default() += sign * scale;
        }
    }
    out
}

/// Diagonal of a Z-polynomial: `Z_i` is `+1` when bit `i` is 0, `-1` when 1.
pub fn z_diagonal(zpoly: &BTreeMap<Vec<u32>, f64>, qubits: usize) -> Vec<f64> {
    (0..1usize << qubits)
        .map(|b| {
            zpoly
                .iter()
                .map(|(zs, c)| {
                    let ones = zs.iter().filter(|&&i| b >> i & 1 == 1).count();
                    if ones % 2 == 0 {
                        *c
                    } else {
                        -c
                    }
                })
                .sum()
        })
        .collect()
}

pub fn bits(b: usize, r: usize) -> Vec<bool> {
    (0..r).map(|i| b >> i & 1 == 1).collect()
}

/// A small random instance: a few motif copies on a handful of nodes (so
/// they tend to overlap) plus random filler, at most `max_edges` edges.
/// With `wildcard`, some edges are Unknown.
pub fn random_instance(seed: u64, m: &MotifPattern, max_edges: usize, wildcard: bool) -> RegulatoryNetwork {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nodes = rng.gen_range(m.size()..=m.size() + 3);
    let names: Vec<String> = (0..nodes).map(|i| format!("n{i}")).collect();
    let mut edges: BTreeMap<(usize, usize), Relation> = BTreeMap::new();
    let copies = rng.gen_range(1..=3);
    let mut pool: Vec<usize> = (0..nodes).collect();
    for _ in 0..copies {
        pool.shuffle(&mut rng);
        let place = &pool[..m.size()];
        if edges.len() + m.edge_count() > max_edges {
            break;
        }
        for e in m.edges() {
            edges.entry((place[e.a], place[e.b])).or_insert(e.relation);
        }
    }
    let target = rng.gen_range(edges.len()..=max_edges);
    let mut attempts = 0;
    while edges.len() < target && attempts < 1000 {
        attempts += 1;
        let (s, d) = (rng.gen_range(0..nodes), rng.gen_range(0..nodes));
        if s != d {
            let rel = if rng.gen_bool(0.5) {
                Relation::Activation
            } else {
                Relation::Repression
            };
            edges.entry((s, d)).or_insert(rel);
        }
    }
    if wildcard {
        for rel in edges.values_mut() {
            if rng.gen_bool(0.25) {
                *rel = Relation::Unknown;
            }
        }
    }
    let named: Vec<(String, String, Relation)> = edges
        .into_iter()
        .map(|((s, d), r)| (names[s].clone(), names[d].clone(), r))
        .collect();
    RegulatoryNetwork::from_named_edges(format!("rand{seed}"), &names, &named).unwrap()
}

/// Random embedding-like node sets over a shared pool, as an `EmbeddingSet`
/// for the conflict-graph solvers. Edge ids are the candidate index.
pub fn random_conflict_instance(seed: u64, max: usize) -> EmbeddingSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(0..=max);
    let pool = rng.gen_range(6..=40);
    let embeddings = (0..k)
        .map(|i| {
            let size = rng.gen_range(3..=4).min(pool);
            let mut ns: Vec<usize> = rand::seq::index::sample(&mut rng, pool, size).into_vec();
            let mapping = ns.clone();
            ns.sort_unstable();
            motifq_core::Embedding {
                edge_ids: vec![i],
                node_ids: ns,
                mapping,
            }
        })
        .collect();
    EmbeddingSet::new(format!("conflict{seed}"), embeddings)
}
