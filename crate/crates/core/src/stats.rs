//! Motif-count significance against shuffled null networks.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, MotifPattern, RegulatoryNetwork};
use crate::pipeline::{run_identification, RunConfig, SolverKind};
use crate::rng::{replicate_seed, stream_rng, Stream};

/// Accepted swaps per edge.
const SWAPS_PER_EDGE: usize = 10;
/// Attempts allowed per requested swap before giving up.
const ATTEMPTS_PER_SWAP: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NullModel {
    /// Directed double-edge swaps; in/out degrees are kept.
    #[default]
    DegreePreserving,
    /// Same number of edges placed uniformly at random.
    Uniform,
}

impl std::str::FromStr for NullModel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "degree-preserving" | "degree" => Ok(NullModel::DegreePreserving),
            "uniform" => Ok(NullModel::Uniform),
            other => Err(format!(
                "unknown null model '{other}' (expected degree-preserving or uniform)"
            )),
        }
    }
}

/// Directed double-edge swaps: `a→b, c→d` becomes `a→d, c→b`, each source
/// keeping its edge label. Swaps that would create a self-loop or a duplicate
/// are rejected. Stops after `10·|E|` accepted swaps (or the attempt cap).
pub fn shuffle_edges(net: &RegulatoryNetwork, seed: u64) -> RegulatoryNetwork {
    let mut edges: Vec<Edge> = net.edges().to_vec();
    let m = edges.len();
    if m < 2 {
        return net.clone();
    }
    let mut present: HashSet<(usize, usize)> = edges.iter().map(|e| (e.src, e.dst)).collect();
    let mut rng = stream_rng(seed, Stream::Shuffle);
    let target = SWAPS_PER_EDGE * m;
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < target && attempts < target * ATTEMPTS_PER_SWAP {
        attempts += 1;
        let i = rng.gen_range(0..m);
        let j = rng.gen_range(0..m);
        let (x, y) = (edges[i], edges[j]);
        if i == j || x.src == y.dst || y.src == x.dst {
            continue;
        }
        if present.contains(&(x.src, y.dst)) || present.contains(&(y.src, x.dst)) {
            continue;
        }
        present.remove(&(x.src, x.dst));
        present.remove(&(y.src, y.dst));
        present.insert((x.src, y.dst));
        present.insert((y.src, x.dst));
        edges[i].dst = y.dst;
        edges[j].dst = x.dst;
        accepted += 1;
    }
    if accepted < target {
        log::warn!("{}: only {accepted} of {target} swaps accepted", net.name());
    }
    net.with_edges(edges)
}

/// Same node set and relation multiset, edges placed uniformly at random.
pub fn rewire_uniform(net: &RegulatoryNetwork, seed: u64) -> RegulatoryNetwork {
    let n = net.node_count();
    let mut rng = stream_rng(seed, Stream::Shuffle);
    let mut relations: Vec<_> = net.edges().iter().map(|e| e.relation).collect();
    relations.shuffle(&mut rng);
    let mut present = HashSet::new();
    let mut edges = Vec::with_capacity(relations.len());
    for relation in relations {
        loop {
            let (src, dst) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if src != dst && present.insert((src, dst)) {
                edges.push(Edge { src, dst, relation });
                break;
            }
        }
    }
    net.with_edges(edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Over,
    Under,
    Neutral,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZScoreReport {
    pub network: String,
    pub motif: String,
    pub solver: SolverKind,
    pub null: NullModel,
    pub observed: usize,
    pub null_mean: f64,
    /// Sample standard deviation (divisor `N - 1`).
    pub null_std: f64,
    pub z: f64,
    pub replicates: usize,
    pub classification: Classification,
    /// `σ = 0`: z is reported as 0.
    pub degenerate: bool,
    pub seed: u64,
    pub null_counts: Vec<usize>,
}

impl ZScoreReport {
    pub const CSV_COLUMNS: [&'static str; 12] = [
        "network",
        "motif",
        "solver",
        "null",
        "replicates",
        "observed",
        "null_mean",
        "null_std",
        "z",
        "classification",
        "degenerate",
        "seed",
    ];

    pub fn csv_record(&self) -> Vec<String> {
        let null = match self.null {
            NullModel::DegreePreserving => "degree-preserving",
            NullModel::Uniform => "uniform",
        };
        let class = match self.classification {
            Classification::Over => "over",
            Classification::Under => "under",
            Classification::Neutral => "neutral",
        };
        vec![
            self.network.clone(),
            self.motif.clone(),
            self.solver.as_str().into(),
            null.into(),
            self.replicates.to_string(),
            self.observed.to_string(),
            self.null_mean.to_string(),
            self.null_std.to_string(),
            self.z.to_string(),
            class.into(),
            self.degenerate.to_string(),
            self.seed.to_string(),
        ]
    }

    pub fn write_csv<W: std::io::Write>(out: W, reports: &[ZScoreReport]) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(Self::CSV_COLUMNS).map_err(crate::io::csv_err)?;
        for r in reports {
            w.write_record(r.csv_record()).map_err(crate::io::csv_err)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Summary statistics of null counts against an observed count.
pub fn summarize(observed: usize, counts: &[usize]) -> (f64, f64, f64, Classification, bool) {
    let n = counts.len() as f64;
    let mean = counts.iter().sum::<usize>() as f64 / n;
    let var = counts.iter().map(|&c| (c as f64 - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let std = var.sqrt();
    if std == 0.0 {
        return (mean, 0.0, 0.0, Classification::Neutral, true);
    }
    let z = (observed as f64 - mean) / std;
    let class = if z > 2.0 {
        Classification::Over
    } else if z < -2.0 {
        Classification::Under
    } else {
        Classification::Neutral
    };
    (mean, std, z, class, false)
}

/// z-score of the motif count of `net` against `replicates` null networks,
/// each solved with the same configuration. Replicate `i` uses a seed
/// derived from `seed` and `i`.
pub fn zscore(
    net: &RegulatoryNetwork,
    motif: &MotifPattern,
    replicates: usize,
    config: &RunConfig,
    seed: u64,
    null: NullModel,
) -> Result<ZScoreReport> {
    if replicates < 2 {
        return Err(Error::InvalidConfig("at least 2 null replicates are needed".into()));
    }
    let count = |g: &RegulatoryNetwork, s: u64| -> Result<usize> {
        let cfg = RunConfig {
            seed: s,
            ..config.clone()
        };
        Ok(run_identification(g, motif, &cfg)?.motif_count)
    };
    let observed = count(net, seed)?;
    let null_counts: Vec<usize> = (0..replicates as u64)
        .into_par_iter()
        .map(|i| {
            let s = replicate_seed(seed, i);
            let g = match null {
                NullModel::DegreePreserving => shuffle_edges(net, s),
                NullModel::Uniform => rewire_uniform(net, s),
            };
            count(&g, s)
        })
        .collect::<Result<_>>()?;
    let (null_mean, null_std, z, classification, degenerate) = summarize(observed, &null_counts);
    Ok(ZScoreReport {
        network: net.name().to_owned(),
        motif: motif.name().to_owned(),
        solver: config.solver,
        null,
        observed,
        null_mean,
        null_std,
        z,
        replicates,
        classification,
        degenerate,
        seed,
        null_counts,
    })
}
