//! Classical solvers over the embedding conflict graph: the loss-driven
//! greedy baseline and an exact branch-and-bound maximum independent set.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::{build_conflict_graph, ConflictGraph, EmbeddingSet};

/// Largest conflict component the exact solver accepts (bitmask width).
pub const MAX_EXACT_CAP: usize = 64;
pub const DEFAULT_EXACT_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverMethod {
    Baseline,
    Exact,
    Qaoa,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverResult {
    pub selected: EmbeddingSet,
    pub motif_count: usize,
    pub method: SolverMethod,
    /// False when the exact search ran out of budget.
    pub optimal: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// How the greedy baseline scores a candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LossMode {
    /// Conflicts with still-available candidates, recomputed every round.
    #[default]
    Dynamic,
    /// Conflicts in the full candidate set, computed once.
    Static,
}

impl std::str::FromStr for LossMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dynamic" => Ok(LossMode::Dynamic),
            "static" => Ok(LossMode::Static),
            other => Err(format!("unknown loss mode '{other}' (expected dynamic or static)")),
        }
    }
}

fn finish(
    embs: &EmbeddingSet,
    mut picked: Vec<usize>,
    method: SolverMethod,
    optimal: bool,
    start: Instant,
) -> SolverResult {
    picked.sort_by(|&a, &b| embs.embeddings[a].edge_ids.cmp(&embs.embeddings[b].edge_ids));
    let selected = EmbeddingSet::new(
        embs.network_ref.clone(),
        picked.iter().map(|&i| embs.embeddings[i].clone()).collect(),
    );
    SolverResult {
        motif_count: selected.len(),
        selected,
        method,
        optimal,
        elapsed: start.elapsed(),
    }
}

/// Repeatedly takes the candidate with the least loss (ties: least edge set)
/// and discards everything conflicting with it.
pub fn baseline_greedy(embs: &EmbeddingSet, mode: LossMode) -> SolverResult {
    let start = Instant::now();
    let graph = build_conflict_graph(embs);
    let n = embs.len();
    let mut available = vec![true; n];
    let static_loss: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
    let mut picked = Vec::new();
    loop {
        let loss = |v: usize| match mode {
            LossMode::Dynamic => graph.neighbours(v).iter().filter(|&&w| available[w]).count(),
            LossMode::Static => static_loss[v],
        };
        let choice = (0..n).filter(|&v| available[v]).min_by(|&a, &b| {
            loss(a)
                .cmp(&loss(b))
                .then_with(|| embs.embeddings[a].edge_ids.cmp(&embs.embeddings[b].edge_ids))
        });
        let Some(v) = choice else { break };
        picked.push(v);
        available[v] = false;
        for &w in graph.neighbours(v) {
            available[w] = false;
        }
    }
    finish(embs, picked, SolverMethod::Baseline, false, start)
}

#[derive(Debug, Error)]
pub enum ExactError {
    #[error("search budget exhausted; best found has {} motifs", .0.motif_count)]
    BudgetExhausted(SolverResult),
    #[error("conflict component of {size} embeddings exceeds the cap of {cap}")]
    TooManyEmbeddings { size: usize, cap: usize },
}

/// Maximum independent set of the conflict graph.
///
/// Each conflict component is solved separately by branch and bound:
/// branch on a maximum-degree vertex, bound with a greedy clique cover, take
/// vertices of degree ≤ 1 without branching.
pub fn exact_mis(embs: &EmbeddingSet, budget: Duration, cap: usize) -> Result<SolverResult, ExactError> {
    let start = Instant::now();
    let cap = cap.min(MAX_EXACT_CAP);
    let graph = build_conflict_graph(embs);
    let components = graph.components();
    if let Some(big) = components.iter().find(|c| c.len() > cap) {
        return Err(ExactError::TooManyEmbeddings { size: big.len(), cap });
    }
    let deadline = start + budget;
    let mut picked = Vec::new();
    let mut exhausted = false;
    for comp in &components {
        let (best, complete) = solve_component(&graph, comp, deadline);
        exhausted |= !complete;
        picked.extend(best);
    }
    let result = finish(embs, picked, SolverMethod::Exact, !exhausted, start);
    if exhausted {
        Err(ExactError::BudgetExhausted(result))
    } else {
        Ok(result)
    }
}

struct Search {
    adj: Vec<u64>,
    best: u64,
    nodes: u64,
    deadline: Instant,
    timed_out: bool,
}

fn solve_component(graph: &ConflictGraph, comp: &[usize], deadline: Instant) -> (Vec<usize>, bool) {
    if comp.len() == 1 {
        return (comp.to_vec(), true);
    }
    let local: std::collections::HashMap<usize, usize> = comp.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj: Vec<u64> = comp
        .iter()
        .map(|&v| {
            graph
                .neighbours(v)
                .iter()
                .filter_map(|w| local.get(w))
                .fold(0u64, |m, &i| m | 1 << i)
        })
        .collect();
    let all = if comp.len() == 64 {
        u64::MAX
    } else {
        (1u64 << comp.len()) - 1
    };
    let mut search = Search {
        best: greedy_seed(&adj, all),
        adj,
        nodes: 0,
        deadline,
        timed_out: false,
    };
    search.branch(all, 0);
    let chosen = (0..comp.len())
        .filter(|i| search.best >> i & 1 == 1)
        .map(|i| comp[i])
        .collect();
    (chosen, !search.timed_out)
}

/// Min-degree greedy start so the bound prunes from the first branch.
fn greedy_seed(adj: &[u64], all: u64) -> u64 {
    let mut cand = all;
    let mut chosen = 0;
    while cand != 0 {
        let v = bits(cand)
            .min_by_key(|&v| ((adj[v] & cand).count_ones(), v))
            .expect("non-empty");
        chosen |= 1 << v;
        cand &= !(adj[v] | 1 << v);
    }
    chosen
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(v)
    })
}

impl Search {
    fn branch(&mut self, mut cand: u64, mut chosen: u64) {
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) && Instant::now() >= self.deadline {
            self.timed_out = true;
        }
        if self.timed_out {
            return;
        }
        // Degree 0 and 1 vertices belong to some maximum independent set.
        loop {
            let low = bits(cand).find(|&v| (self.adj[v] & cand).count_ones() <= 1);
            match low {
                Some(v) => {
                    chosen |= 1 << v;
                    cand &= !(self.adj[v] | 1 << v);
                }
                None => break,
            }
        }
        if cand == 0 {
            if chosen.count_ones() > self.best.count_ones() {
                self.best = chosen;
            }
            return;
        }
        if chosen.count_ones() + self.clique_cover(cand) <= self.best.count_ones() {
            return;
        }
        let v = bits(cand)
            .max_by_key(|&v| ((self.adj[v] & cand).count_ones(), std::cmp::Reverse(v)))
            .expect("non-empty");
        self.branch(cand & !(self.adj[v] | 1 << v), chosen | 1 << v);
        self.branch(cand & !(1 << v), chosen);
    }

    /// Number of cliques in a greedy cover of `cand`; bounds any independent set.
    fn clique_cover(&self, cand: u64) -> u32 {
        let mut cliques: Vec<u64> = Vec::new();
        for v in bits(cand) {
            match cliques.iter_mut().find(|c| **c & !self.adj[v] == 0) {
                Some(c) => *c |= 1 << v,
                None => cliques.push(1 << v),
            }
        }
        cliques.len() as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::Embedding;

    /// Embeddings whose node sets realize a given conflict pattern: conflict
    /// edge `(a, b)` becomes a node shared by `a` and `b`.
    fn from_conflicts(n: usize, conflicts: &[(usize, usize)]) -> EmbeddingSet {
        let mut nodes: Vec<Vec<usize>> = (0..n).map(|i| vec![1000 + i]).collect();
        for (k, &(a, b)) in conflicts.iter().enumerate() {
            nodes[a].push(k);
            nodes[b].push(k);
        }
        let embeddings = nodes
            .into_iter()
            .enumerate()
            .map(|(i, mut ns)| {
                ns.sort_unstable();
                Embedding {
                    edge_ids: vec![i],
                    mapping: ns.clone(),
                    node_ids: ns,
                }
            })
            .collect();
        EmbeddingSet::new("t", embeddings)
    }

    const BUDGET: Duration = Duration::from_secs(10);

    #[test]
    fn disjoint_embeddings_all_selected() {
        let embs = from_conflicts(4, &[]);
        assert_eq!(baseline_greedy(&embs, LossMode::Dynamic).motif_count, 4);
        assert_eq!(exact_mis(&embs, BUDGET, 64).unwrap().motif_count, 4);
        let empty = from_conflicts(0, &[]);
        assert_eq!(baseline_greedy(&empty, LossMode::Dynamic).motif_count, 0);
        assert_eq!(exact_mis(&empty, BUDGET, 64).unwrap().motif_count, 0);
    }

    #[test]
    fn star_conflict_picks_leaves() {
        let embs = from_conflicts(4, &[(0, 1), (0, 2), (0, 3)]);
        for mode in [LossMode::Dynamic, LossMode::Static] {
            let r = baseline_greedy(&embs, mode);
            let ids: Vec<usize> = r.selected.embeddings.iter().map(|e| e.edge_ids[0]).collect();
            assert_eq!(ids, vec![1, 2, 3]);
            assert!(r.selected.is_non_overlapping());
        }
    }

    #[test]
    fn exact_small_graphs() {
        let k5: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        assert_eq!(exact_mis(&from_conflicts(5, &k5), BUDGET, 64).unwrap().motif_count, 1);
        let c5 = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
        let r = exact_mis(&from_conflicts(5, &c5), BUDGET, 64).unwrap();
        assert_eq!(r.motif_count, 2);
        assert!(r.optimal && r.selected.is_non_overlapping());
    }

    #[test]
    fn cap_is_enforced_per_component() {
        let path: Vec<(usize, usize)> = (0..9).map(|i| (i, i + 1)).collect();
        let embs = from_conflicts(10, &path);
        assert!(matches!(
            exact_mis(&embs, BUDGET, 5),
            Err(ExactError::TooManyEmbeddings { size: 10, cap: 5 })
        ));
        // Same count split into two components of five fits.
        let split: Vec<(usize, usize)> = (0..4).map(|i| (i, i + 1)).chain((5..9).map(|i| (i, i + 1))).collect();
        assert_eq!(
            exact_mis(&from_conflicts(10, &split), BUDGET, 5).unwrap().motif_count,
            6
        );
    }

    #[test]
    fn zero_budget_reports_best_so_far() {
        // 60-vertex component dense enough to need branching.
        let mut conflicts = Vec::new();
        for a in 0..60usize {
            for b in a + 1..60 {
                if (a * 7 + b * 13) % 5 == 0 {
                    conflicts.push((a, b));
                }
            }
        }
        let embs = from_conflicts(60, &conflicts);
        match exact_mis(&embs, Duration::ZERO, 64) {
            Err(ExactError::BudgetExhausted(best)) => {
                assert!(!best.optimal);
                assert!(best.selected.is_non_overlapping());
                assert!(best.motif_count > 0);
            }
            Ok(r) => assert!(r.optimal),
            Err(e) => panic!("{e}"),
        }
    }
}
