//! End-to-end identification: prune, partition to the qubit cap, solve each
//! part, merge the node-disjoint results.

use std::collections::{BTreeSet, VecDeque};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::embedding::{enumerate_embeddings, verify_edge_decomposition, Embedding, EmbeddingSet};
use crate::error::{Error, Result};
use crate::graph::{EdgeIdx, MotifPattern, NodeIdx, RegulatoryNetwork, Relation};
use crate::io::NetworkFormat;
use crate::pbo::{HMode, ModelOptions, PairExclusion, DEFAULT_TERM_CAP};
use crate::qaoa::{self, OptimizerConfig, QaoaConfig, DEFAULT_QUBIT_CAP};
use crate::rng::replicate_seed;
use crate::solvers::{baseline_greedy, exact_mis, ExactError, LossMode, SolverMethod, DEFAULT_EXACT_CAP};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    #[default]
    Qaoa,
    Baseline,
    Exact,
}

impl SolverKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SolverKind::Qaoa => "qaoa",
            SolverKind::Baseline => "baseline",
            SolverKind::Exact => "exact",
        }
    }
}

impl std::str::FromStr for SolverKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "qaoa" => Ok(SolverKind::Qaoa),
            "baseline" => Ok(SolverKind::Baseline),
            "exact" => Ok(SolverKind::Exact),
            other => Err(format!("unknown solver '{other}' (expected qaoa, baseline or exact)")),
        }
    }
}

/// Where the network and motif come from. Echoed into reports so a run can
/// be repeated from its report alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunInputs {
    pub network: Option<PathBuf>,
    pub format: NetworkFormat,
    /// Builtin motif name or motif file path.
    pub motif: String,
    pub genes: Option<PathBuf>,
    pub min_score: f64,
}

impl Default for RunInputs {
    fn default() -> Self {
        Self {
            network: None,
            format: NetworkFormat::Tsv,
            motif: "ffl".into(),
            genes: None,
            min_score: 0.0,
        }
    }
}

/// Output locations. Not part of the echoed config, so writing the same run
/// to another path yields the same bytes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunOutputs {
    pub report: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub solver: SolverKind,
    /// QAOA layers.
    pub p: usize,
    pub shots: usize,
    pub restarts: usize,
    pub max_evals: usize,
    /// One constant for every penalty; `None` uses `|E| + 1` per part.
    pub penalty: Option<f64>,
    pub qubit_cap: usize,
    pub h_mode: HMode,
    pub exclusion: PairExclusion,
    /// Unknown network edges match any motif label.
    pub wildcard: bool,
    pub seed: u64,
    pub loss: LossMode,
    pub exact_budget_ms: u64,
    pub exact_cap: usize,
    pub term_cap: usize,
    /// Drop edges that lie in no embedding before partitioning.
    pub prune: bool,
    pub inputs: RunInputs,
    #[serde(skip)]
    pub outputs: RunOutputs,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            solver: SolverKind::Qaoa,
            p: 2,
            shots: 1024,
            restarts: 5,
            max_evals: 400,
            penalty: None,
            qubit_cap: DEFAULT_QUBIT_CAP,
            h_mode: HMode::Orbit,
            exclusion: PairExclusion::Edge,
            wildcard: false,
            seed: 0,
            loss: LossMode::Dynamic,
            exact_budget_ms: 10_000,
            exact_cap: DEFAULT_EXACT_CAP,
            term_cap: DEFAULT_TERM_CAP,
            prune: true,
            inputs: RunInputs::default(),
            outputs: RunOutputs::default(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self, motif: &MotifPattern) -> Result<()> {
        if self.solver == SolverKind::Qaoa {
            if self.p == 0 {
                return Err(Error::InvalidConfig("p must be at least 1".into()));
            }
            if self.shots == 0 {
                return Err(Error::InvalidConfig("shots must be at least 1".into()));
            }
            if self.restarts == 0 {
                return Err(Error::InvalidConfig("restarts must be at least 1".into()));
            }
            if motif.edge_count() > self.qubit_cap {
                return Err(Error::MotifLargerThanCap {
                    motif_edges: motif.edge_count(),
                    cap: self.qubit_cap,
                });
            }
        }
        if let Some(a) = self.penalty {
            if !(a.is_finite() && a > 0.0) {
                return Err(Error::InvalidConfig(format!("penalty must be positive, got {a}")));
            }
        }
        if self.exact_cap == 0 || self.exact_cap > crate::solvers::MAX_EXACT_CAP {
            return Err(Error::InvalidConfig(format!(
                "exact cap must be in 1..={}",
                crate::solvers::MAX_EXACT_CAP
            )));
        }
        Ok(())
    }

    fn qaoa_config(&self, seed: u64) -> QaoaConfig {
        QaoaConfig {
            layers: self.p,
            shots: self.shots,
            qubit_cap: self.qubit_cap,
            optimizer: OptimizerConfig {
                restarts: self.restarts,
                max_evals: self.max_evals,
                seed,
                ..OptimizerConfig::default()
            },
            model: ModelOptions {
                mode: self.h_mode,
                exclusion: self.exclusion,
                wildcard: self.wildcard,
                term_cap: self.term_cap,
            },
            penalty: self.penalty,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub parts: Vec<BTreeSet<NodeIdx>>,
    pub dropped_edges: Vec<EdgeIdx>,
}

/// Splits `net` into node-disjoint parts whose induced edge counts fit
/// `qubit_cap`.
///
/// A network within the cap is one part. Otherwise each weakly connected
/// component within the cap is a part, and larger components are cut by
/// greedy BFS: a cluster grows from the least unassigned node until the next
/// frontier node would push its induced edge count past the cap.
pub fn partition_network(net: &RegulatoryNetwork, qubit_cap: usize, motif_edges: usize) -> Result<Partition> {
    if motif_edges > qubit_cap {
        return Err(Error::MotifLargerThanCap {
            motif_edges,
            cap: qubit_cap,
        });
    }
    if net.edge_count() <= qubit_cap {
        return Ok(Partition {
            parts: vec![(0..net.node_count()).collect()],
            dropped_edges: vec![],
        });
    }
    let mut parts = Vec::new();
    for comp in net.weak_components() {
        let inner = induced_edge_count(net, &comp);
        if inner <= qubit_cap {
            parts.push(comp);
            continue;
        }
        let mut unassigned = comp;
        while let Some(&start) = unassigned.iter().next() {
            let mut cluster = BTreeSet::from([start]);
            unassigned.remove(&start);
            let mut edges = 0;
            let mut queue: VecDeque<NodeIdx> = VecDeque::from([start]);
            let mut queued = BTreeSet::from([start]);
            'grow: while let Some(v) = queue.pop_front() {
                for w in net.neighbours(v) {
                    if !unassigned.contains(&w) || !queued.insert(w) {
                        continue;
                    }
                    let added = net
                        .neighbours(w)
                        .iter()
                        .filter(|u| cluster.contains(u))
                        .map(|&u| {
                            usize::from(net.edge_between(u, w).is_some())
                                + usize::from(net.edge_between(w, u).is_some())
                        })
                        .sum::<usize>();
                    if edges + added > qubit_cap {
                        break 'grow;
                    }
                    edges += added;
                    cluster.insert(w);
                    unassigned.remove(&w);
                    queue.push_back(w);
                }
            }
            parts.push(cluster);
        }
    }
    parts.sort_by_key(|p| p.iter().next().copied());
    let mut owner = vec![usize::MAX; net.node_count()];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            owner[v] = i;
        }
    }
    let dropped_edges = net
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| owner[e.src] != owner[e.dst])
        .map(|(i, _)| i)
        .collect();
    Ok(Partition { parts, dropped_edges })
}

fn induced_edge_count(net: &RegulatoryNetwork, nodes: &BTreeSet<NodeIdx>) -> usize {
    nodes
        .iter()
        .map(|&v| {
            net.out_edges(v)
                .iter()
                .filter(|&&e| nodes.contains(&net.edge(e).dst))
                .count()
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkSummary {
    pub name: String,
    pub nodes: usize,
    pub edges: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportedEmbedding {
    pub edge_ids: Vec<EdgeIdx>,
    /// `src, dst, relation` per edge.
    pub edges: Vec<(String, String, Relation)>,
    /// Network node playing each motif node, in motif order.
    pub mapping: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QaoaPartDetails {
    pub qubits: usize,
    pub terms: usize,
    pub expectation: f64,
    pub gammas: Vec<f64>,
    pub betas: Vec<f64>,
    pub evaluations: usize,
    pub raw_sample: u64,
    pub raw_f_value: f64,
    pub f_value: f64,
    pub repaired: bool,
    pub distinct_samples: usize,
    pub feasible_samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartReport {
    pub index: usize,
    pub nodes: usize,
    pub edges: usize,
    pub candidates: usize,
    pub motif_count: usize,
    pub method: SolverMethod,
    /// Set when the configured solver failed and the greedy baseline stood in.
    pub fallback: Option<String>,
    /// False when an exact search ran out of budget.
    pub optimal: Option<bool>,
    pub qaoa: Option<QaoaPartDetails>,
}

/// Wall-clock time per stage, summed over parts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct StageTimings {
    pub enumeration_ms: f64,
    pub compile_ms: f64,
    pub optimize_ms: f64,
    pub sample_ms: f64,
    pub decode_ms: f64,
    pub classical_ms: f64,
    pub total_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub schema_version: u32,
    pub tool: String,
    pub version: String,
    pub network: NetworkSummary,
    pub motif: MotifPattern,
    pub solver: SolverKind,
    pub seed: u64,
    pub motif_count: usize,
    pub activation_count: usize,
    pub repression_count: usize,
    pub unknown_count: usize,
    pub candidate_embeddings: usize,
    pub pruned_edges: usize,
    pub dropped_edges: usize,
    pub embeddings: Vec<ReportedEmbedding>,
    pub parts: Vec<PartReport>,
    pub config: RunConfig,
    /// Kept out of the report document; see [`SolutionReport::timings_json`].
    #[serde(skip)]
    pub timings: StageTimings,
    #[serde(skip)]
    pub selected: EmbeddingSet,
}

impl SolutionReport {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn timings_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(&self.timings)?;
        s.push('\n');
        Ok(s)
    }
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

struct PartOutcome {
    selected: Vec<Embedding>,
    report: PartReport,
    timings: StageTimings,
}

/// Runs `config.solver` on `net`. Classical solvers work on the whole
/// conflict graph; QAOA works per part of a qubit-cap partition. The merged
/// selection always passes the edge-decomposition verifier.
pub fn run_identification(net: &RegulatoryNetwork, motif: &MotifPattern, config: &RunConfig) -> Result<SolutionReport> {
    config.validate(motif)?;
    let start = Instant::now();
    let t = Instant::now();
    let all = enumerate_embeddings(net, motif, config.wildcard);
    let mut timings = StageTimings {
        enumeration_ms: ms(t.elapsed()),
        ..Default::default()
    };

    let (outcomes, pruned_edges, dropped_edges) = match config.solver {
        SolverKind::Baseline | SolverKind::Exact => {
            let t = Instant::now();
            let (sel, method, fallback, optimal) = solve_classical(&all, config);
            let outcome = PartOutcome {
                report: PartReport {
                    index: 0,
                    nodes: net.node_count(),
                    edges: net.edge_count(),
                    candidates: all.len(),
                    motif_count: sel.len(),
                    method,
                    fallback,
                    optimal,
                    qaoa: None,
                },
                selected: sel,
                timings: StageTimings {
                    classical_ms: ms(t.elapsed()),
                    ..Default::default()
                },
            };
            (vec![outcome], 0, 0)
        }
        SolverKind::Qaoa => {
            let kept: BTreeSet<EdgeIdx> = if config.prune {
                all.edge_union()
            } else {
                (0..net.edge_count()).collect()
            };
            let (work, work_parent) = net.edge_subgraph(&kept);
            let partition = partition_network(&work, config.qubit_cap, motif.edge_count())?;
            let busy: Vec<(usize, &BTreeSet<NodeIdx>)> = partition
                .parts
                .iter()
                .filter(|p| induced_edge_count(&work, p) >= motif.edge_count())
                .enumerate()
                .collect();
            let outcomes: Vec<PartOutcome> = busy
                .par_iter()
                .map(|&(i, nodes)| solve_part(&work, &work_parent, nodes, i, motif, config))
                .collect::<Result<_>>()?;
            (outcomes, net.edge_count() - kept.len(), partition.dropped_edges.len())
        }
    };

    let mut selected: Vec<Embedding> = Vec::new();
    let mut parts = Vec::new();
    for o in outcomes {
        selected.extend(o.selected);
        parts.push(o.report);
        timings.compile_ms += o.timings.compile_ms;
        timings.optimize_ms += o.timings.optimize_ms;
        timings.sample_ms += o.timings.sample_ms;
        timings.decode_ms += o.timings.decode_ms;
        timings.classical_ms += o.timings.classical_ms;
    }
    selected.sort();
    let selected = EmbeddingSet::new(net.name(), selected);
    let union = selected.edge_union();
    let verdict = verify_edge_decomposition(net, motif, config.wildcard, &union);
    assert!(
        selected.is_non_overlapping() && verdict.witness().is_some_and(|w| w.len() == selected.len()),
        "merged selection failed verification: {verdict:?}"
    );

    let mut tally = [0usize; 3];
    for &e in &union {
        tally[match net.edge(e).relation {
            Relation::Activation => 0,
            Relation::Repression => 1,
            Relation::Unknown => 2,
        }] += 1;
    }
    let embeddings = selected
        .embeddings
        .iter()
        .map(|emb| ReportedEmbedding {
            edge_ids: emb.edge_ids.clone(),
            edges: emb
                .edge_ids
                .iter()
                .map(|&e| {
                    let edge = net.edge(e);
                    (
                        net.node_name(edge.src).to_owned(),
                        net.node_name(edge.dst).to_owned(),
                        edge.relation,
                    )
                })
                .collect(),
            mapping: emb.mapping.iter().map(|&v| net.node_name(v).to_owned()).collect(),
        })
        .collect();
    timings.total_ms = ms(start.elapsed());

    Ok(SolutionReport {
        schema_version: SCHEMA_VERSION,
        tool: "motifq".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        network: NetworkSummary {
            name: net.name().to_owned(),
            nodes: net.node_count(),
            edges: net.edge_count(),
        },
        motif: motif.clone(),
        solver: config.solver,
        seed: config.seed,
        motif_count: selected.len(),
        activation_count: tally[0],
        repression_count: tally[1],
        unknown_count: tally[2],
        candidate_embeddings: all.len(),
        pruned_edges,
        dropped_edges,
        embeddings,
        parts,
        config: config.clone(),
        timings,
        selected,
    })
}

/// (selection, method, fallback reason, optimality flag)
fn solve_classical(
    embs: &EmbeddingSet,
    config: &RunConfig,
) -> (Vec<Embedding>, SolverMethod, Option<String>, Option<bool>) {
    match config.solver {
        SolverKind::Exact => match exact_mis(embs, Duration::from_millis(config.exact_budget_ms), config.exact_cap) {
            Ok(r) => (r.selected.embeddings, SolverMethod::Exact, None, Some(true)),
            Err(ExactError::BudgetExhausted(best)) => {
                log::warn!(
                    "exact search budget exhausted; keeping best found ({})",
                    best.motif_count
                );
                (best.selected.embeddings, SolverMethod::Exact, None, Some(false))
            }
            Err(e @ ExactError::TooManyEmbeddings { .. }) => {
                log::warn!("{e}; falling back to the greedy baseline");
                let r = baseline_greedy(embs, config.loss);
                (r.selected.embeddings, SolverMethod::Baseline, Some(e.to_string()), None)
            }
        },
        _ => (
            baseline_greedy(embs, config.loss).selected.embeddings,
            SolverMethod::Baseline,
            None,
            None,
        ),
    }
}

fn solve_part(
    work: &RegulatoryNetwork,
    work_parent: &[EdgeIdx],
    nodes: &BTreeSet<NodeIdx>,
    index: usize,
    motif: &MotifPattern,
    config: &RunConfig,
) -> Result<PartOutcome> {
    let (sub, sub_parent) = work.induced_subgraph(nodes, format!("{}#{index}", work.name()));
    let node_map: Vec<NodeIdx> = nodes.iter().copied().collect();
    let to_parent = |emb: Embedding| -> Embedding {
        Embedding {
            edge_ids: emb.edge_ids.iter().map(|&e| work_parent[sub_parent[e]]).collect(),
            node_ids: emb.node_ids.iter().map(|&v| node_map[v]).collect(),
            mapping: emb.mapping.iter().map(|&v| node_map[v]).collect(),
        }
    };

    let t = Instant::now();
    let candidates = enumerate_embeddings(&sub, motif, config.wildcard);
    let mut timings = StageTimings {
        enumeration_ms: ms(t.elapsed()),
        ..Default::default()
    };
    // Cross-part cuts can strand edges; they would only cost qubits.
    let (sub, keep_parent) = if config.prune {
        let (s, p) = sub.edge_subgraph(&candidates.edge_union());
        (s, Some(p))
    } else {
        (sub, None)
    };
    let lift = |e: EdgeIdx| keep_parent.as_ref().map_or(e, |p| p[e]);
    let mut report = PartReport {
        index,
        nodes: nodes.len(),
        edges: sub.edge_count(),
        candidates: candidates.len(),
        motif_count: 0,
        method: SolverMethod::Qaoa,
        fallback: None,
        optimal: None,
        qaoa: None,
    };
    if candidates.is_empty() {
        return Ok(PartOutcome {
            selected: vec![],
            report,
            timings,
        });
    }

    let seed = replicate_seed(config.seed, index as u64);
    let selected: Vec<Embedding> = match qaoa::solve(&sub, motif, &config.qaoa_config(seed)) {
        Ok(out) => {
            timings.compile_ms = ms(out.timings.compile);
            timings.optimize_ms = ms(out.timings.optimize);
            timings.sample_ms = ms(out.timings.sample);
            timings.decode_ms = ms(out.timings.decode);
            report.qaoa = Some(QaoaPartDetails {
                qubits: out.qubits,
                terms: out.terms,
                expectation: out.optimized.expectation,
                gammas: out.optimized.params.gammas.clone(),
                betas: out.optimized.params.betas.clone(),
                evaluations: out.optimized.evaluations,
                raw_sample: out.decoded.raw_best,
                raw_f_value: out.decoded.raw_f_value,
                f_value: out.decoded.f_value,
                repaired: out.decoded.repaired,
                distinct_samples: out.decoded.distinct_samples,
                feasible_samples: out.decoded.feasible_samples,
            });
            out.decoded.embeddings.embeddings
        }
        Err(e) => {
            log::warn!("part {index}: QAOA failed ({e}); using the greedy baseline");
            let t = Instant::now();
            let full = enumerate_embeddings(&sub, motif, config.wildcard);
            let r = baseline_greedy(&full, config.loss);
            timings.classical_ms = ms(t.elapsed());
            report.method = SolverMethod::Baseline;
            report.fallback = Some(e.to_string());
            r.selected.embeddings
        }
    };
    report.motif_count = selected.len();
    let selected = selected
        .into_iter()
        .map(|emb| {
            let mut edge_ids: Vec<EdgeIdx> = emb.edge_ids.iter().map(|&e| lift(e)).collect();
            edge_ids.sort_unstable();
            to_parent(Embedding { edge_ids, ..emb })
        })
        .collect();
    Ok(PartOutcome {
        selected,
        report,
        timings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::builtin_motif;
    use std::path::Path;

    fn net(text: &str) -> RegulatoryNetwork {
        RegulatoryNetwork::parse_tsv("t", text, Path::new("mem")).unwrap()
    }

    fn path_net(len: usize) -> RegulatoryNetwork {
        let text: String = (0..len).map(|i| format!("v{i:02}\tv{:02}\tA\n", i + 1)).collect();
        net(&text)
    }

    #[test]
    fn partition_small_network_is_one_part() {
        let p = partition_network(&path_net(8), 10, 3).unwrap();
        assert_eq!(p.parts.len(), 1);
        assert!(p.dropped_edges.is_empty());
        assert!(matches!(
            partition_network(&path_net(8), 2, 3),
            Err(Error::MotifLargerThanCap { .. })
        ));
    }

    #[test]
    fn partition_two_components() {
        let mut text = String::new();
        for prefix in ["a", "b"] {
            for i in 0..8 {
                text.push_str(&format!("{prefix}{i}\t{prefix}{}\tA\n", i + 1));
            }
        }
        let p = partition_network(&net(&text), 10, 3).unwrap();
        assert_eq!(p.parts.len(), 2);
        assert!(p.dropped_edges.is_empty());
    }

    #[test]
    fn partition_long_path() {
        let n = path_net(30);
        let p = partition_network(&n, 10, 3).unwrap();
        assert_eq!(p.parts.len(), 3);
        assert_eq!(p.dropped_edges.len(), 2);
        let covered: usize = p.parts.iter().map(BTreeSet::len).sum();
        assert_eq!(covered, n.node_count());
        assert!(p.parts.iter().all(|part| induced_edge_count(&n, part) <= 10));
    }

    fn two_ffls() -> RegulatoryNetwork {
        net("a\tb\tA\na\tc\tA\nb\tc\tR\nx\ty\tA\nx\tz\tA\ny\tz\tR\nc\tx\tA\n")
    }

    #[test]
    fn exact_and_qaoa_find_both_ffls() {
        let ffl = builtin_motif("ffl").unwrap();
        for solver in [SolverKind::Exact, SolverKind::Baseline, SolverKind::Qaoa] {
            let cfg = RunConfig {
                solver,
                seed: 5,
                ..Default::default()
            };
            let report = run_identification(&two_ffls(), &ffl, &cfg).unwrap();
            assert_eq!(report.motif_count, 2, "{solver:?}");
            assert_eq!(
                (report.activation_count, report.repression_count, report.unknown_count),
                (4, 2, 0)
            );
        }
    }

    #[test]
    fn no_embeddings_reports_zero() {
        let ffl = builtin_motif("ffl").unwrap();
        for solver in [SolverKind::Exact, SolverKind::Qaoa] {
            let cfg = RunConfig {
                solver,
                ..Default::default()
            };
            let report = run_identification(&path_net(5), &ffl, &cfg).unwrap();
            assert_eq!(report.motif_count, 0);
            assert_eq!(
                report.activation_count + report.repression_count + report.unknown_count,
                0
            );
        }
    }

    #[test]
    fn report_json_is_stable_and_roundtrips_config() {
        let ffl = builtin_motif("ffl").unwrap();
        let cfg = RunConfig {
            seed: 9,
            ..Default::default()
        };
        let a = run_identification(&two_ffls(), &ffl, &cfg).unwrap().to_json().unwrap();
        let b = run_identification(&two_ffls(), &ffl, &cfg).unwrap().to_json().unwrap();
        assert_eq!(a, b);
        let parsed: SolutionReport = serde_json::from_str(&a).unwrap();
        assert_eq!(parsed.config, cfg);
        let partial: RunConfig = serde_json::from_str(r#"{"solver":"exact"}"#).unwrap();
        assert_eq!(partial.p, 2);
        assert_eq!(partial.solver, SolverKind::Exact);
    }

    #[test]
    fn failing_part_falls_back_to_greedy() {
        let ffl = builtin_motif("ffl").unwrap();
        let cfg = RunConfig {
            term_cap: 1,
            ..Default::default()
        };
        let report = run_identification(&two_ffls(), &ffl, &cfg).unwrap();
        assert_eq!(report.motif_count, 2);
        assert!(report
            .parts
            .iter()
            .all(|p| p.fallback.is_some() && p.method == SolverMethod::Baseline));
    }
}
