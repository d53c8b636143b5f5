//! Seeded synthetic networks with planted motif copies.

use std::collections::BTreeSet;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{builtin_motif, MotifPattern, RegulatoryNetwork, Relation};
use crate::rng::{stream_rng, Stream};

pub const DEFAULT_PLANT_COUNT: usize = 5;

/// How the mean degree `d` maps to a directed edge count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeConvention {
    /// `d` is the mean total (in + out) degree: `round(n·d/2)` edges.
    #[default]
    Total,
    /// `d` is the mean out-degree: `round(n·d)` edges.
    Out,
}

impl std::str::FromStr for DegreeConvention {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "total" => Ok(DegreeConvention::Total),
            "out" => Ok(DegreeConvention::Out),
            other => Err(format!("unknown degree convention '{other}' (expected total or out)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    pub n: usize,
    pub d: f64,
    pub r_act: f64,
    pub motif: MotifPattern,
    pub plant_count: usize,
    pub seed: u64,
    #[serde(default)]
    pub degree: DegreeConvention,
}

impl SynthSpec {
    pub fn new(n: usize, d: f64, r_act: f64, motif: MotifPattern, seed: u64) -> Self {
        Self {
            n,
            d,
            r_act,
            motif,
            plant_count: DEFAULT_PLANT_COUNT,
            seed,
            degree: DegreeConvention::Total,
        }
    }

    pub fn target_edges(&self) -> usize {
        let m = match self.degree {
            DegreeConvention::Total => self.n as f64 * self.d / 2.0,
            DegreeConvention::Out => self.n as f64 * self.d,
        };
        m.round() as usize
    }

    /// File-friendly instance name, e.g. `n100_d4_r0.5_ffl_s7`.
    pub fn instance_name(&self) -> String {
        format!(
            "n{}_d{}_r{}_{}_s{}",
            self.n,
            self.d,
            self.r_act,
            self.motif.name(),
            self.seed
        )
    }

    fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.r_act) {
            return Err(Error::InfeasibleSpec(format!(
                "activation ratio {} outside [0, 1]",
                self.r_act
            )));
        }
        if !self.d.is_finite() || self.d < 0.0 {
            return Err(Error::InfeasibleSpec(format!(
                "mean degree {} is not a non-negative number",
                self.d
            )));
        }
        let need = self.plant_count * self.motif.size();
        if need > self.n {
            return Err(Error::InfeasibleSpec(format!(
                "{} plants of a {}-node motif need {need} nodes, have {}",
                self.plant_count,
                self.motif.size(),
                self.n
            )));
        }
        let planted = self.plant_count * self.motif.edge_count();
        let target = self.target_edges();
        if target < planted {
            return Err(Error::InfeasibleSpec(format!(
                "edge target {target} is below the {planted} planted edges"
            )));
        }
        let max = self.n * self.n.saturating_sub(1);
        if target > max {
            return Err(Error::InfeasibleSpec(format!(
                "edge target {target} exceeds the {max} possible directed edges"
            )));
        }
        Ok(())
    }
}

/// Plants `plant_count` node-disjoint motif copies on random nodes, then adds
/// uniformly random filler edges until the edge target is met. Filler labels
/// carry exactly `round(r_act·k)` activations among `k` filler edges, in
/// random order.
pub fn generate(spec: &SynthSpec) -> Result<RegulatoryNetwork> {
    generate_planted(spec).map(|(net, _)| net)
}

/// [`generate`], also returning each planted copy as the node names playing
/// motif nodes `0..n'`.
pub fn generate_planted(spec: &SynthSpec) -> Result<(RegulatoryNetwork, Vec<Vec<String>>)> {
    spec.validate()?;
    let mut rng = stream_rng(spec.seed, Stream::Generator);
    let width = spec.n.saturating_sub(1).to_string().len();
    let names: Vec<String> = (0..spec.n).map(|i| format!("g{i:0width$}")).collect();

    let mut order: Vec<usize> = (0..spec.n).collect();
    order.shuffle(&mut rng);
    let mut present: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut edges: Vec<(usize, usize, Relation)> = Vec::new();
    let plants: Vec<Vec<String>> = order
        .chunks(spec.motif.size())
        .take(spec.plant_count)
        .map(|copy| copy.iter().map(|&v| names[v].clone()).collect())
        .collect();
    for copy in order.chunks(spec.motif.size()).take(spec.plant_count) {
        for e in spec.motif.edges() {
            let (s, d) = (copy[e.a], copy[e.b]);
            present.insert((s, d));
            edges.push((s, d, e.relation));
        }
    }

    let filler = spec.target_edges() - edges.len();
    let activations = (spec.r_act * filler as f64).round() as usize;
    let mut labels: Vec<Relation> = (0..filler)
        .map(|i| {
            if i < activations {
                Relation::Activation
            } else {
                Relation::Repression
            }
        })
        .collect();
    labels.shuffle(&mut rng);

    let cap = filler.max(1) * 100;
    let mut attempts = 0;
    let mut labels = labels.into_iter();
    while edges.len() < spec.target_edges() {
        attempts += 1;
        if attempts > cap {
            return Err(Error::InfeasibleSpec(format!(
                "placed {} of {} edges within {cap} attempts",
                edges.len(),
                spec.target_edges()
            )));
        }
        let s = rng.gen_range(0..spec.n);
        let d = rng.gen_range(0..spec.n);
        if s == d || !present.insert((s, d)) {
            continue;
        }
        edges.push((s, d, labels.next().expect("one label per filler edge")));
    }

    let named: Vec<(String, String, Relation)> = edges
        .into_iter()
        .map(|(s, d, r)| (names[s].clone(), names[d].clone(), r))
        .collect();
    let net = RegulatoryNetwork::from_named_edges(spec.instance_name(), &names, &named)?;
    Ok((net, plants))
}

/// Sweep manifest: one spec per line, whitespace-separated
/// `n d r_act motif [plant_count [seed]]`. Blank lines and `#` comments are
/// skipped. Missing seeds default to `default_seed`.
pub fn parse_manifest(text: &str, path: &Path, default_seed: u64) -> Result<Vec<SynthSpec>> {
    let mut specs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: String| Error::parse(path, i + 1, msg);
        let cols: Vec<&str> = line.split_whitespace().collect();
        if !(4..=6).contains(&cols.len()) {
            return Err(bad(format!("expected 4 to 6 columns, found {}", cols.len())));
        }
        let n = cols[0]
            .parse()
            .map_err(|e| bad(format!("node count '{}': {e}", cols[0])))?;
        let d = cols[1].parse().map_err(|e| bad(format!("degree '{}': {e}", cols[1])))?;
        let r = cols[2].parse().map_err(|e| bad(format!("ratio '{}': {e}", cols[2])))?;
        let motif = builtin_motif(cols[3]).ok_or_else(|| bad(format!("unknown motif '{}'", cols[3])))?;
        let mut spec = SynthSpec::new(n, d, r, motif, default_seed);
        if let Some(p) = cols.get(4) {
            spec.plant_count = p.parse().map_err(|e| bad(format!("plant count '{p}': {e}")))?;
        }
        if let Some(s) = cols.get(5) {
            spec.seed = s.parse().map_err(|e| bad(format!("seed '{s}': {e}")))?;
        }
        specs.push(spec);
    }
    Ok(specs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::enumerate_embeddings;

    fn ffl_spec(n: usize, d: f64, r: f64, seed: u64) -> SynthSpec {
        SynthSpec::new(n, d, r, builtin_motif("ffl").unwrap(), seed)
    }

    #[test]
    fn planted_copies_are_found() {
        let mut spec = ffl_spec(30, 2.0, 0.5, 11);
        spec.plant_count = 3;
        let net = generate(&spec).unwrap();
        assert_eq!(net.edge_count(), 30);
        assert_eq!(net.node_count(), 30);
        assert!(enumerate_embeddings(&net, &spec.motif, false).len() >= 3);
    }

    #[test]
    fn full_activation_ratio() {
        let net = generate(&ffl_spec(40, 4.0, 1.0, 3)).unwrap();
        let repressions = net
            .edges()
            .iter()
            .filter(|e| e.relation == Relation::Repression)
            .count();
        // Only the five planted FFLs carry repression edges.
        assert_eq!(repressions, 5);
    }

    #[test]
    fn same_seed_same_network() {
        let a = generate(&ffl_spec(50, 3.0, 0.4, 9)).unwrap();
        let b = generate(&ffl_spec(50, 3.0, 0.4, 9)).unwrap();
        assert_eq!(a.to_tsv(), b.to_tsv());
        let c = generate(&ffl_spec(50, 3.0, 0.4, 10)).unwrap();
        assert_ne!(a.to_tsv(), c.to_tsv());
    }

    #[test]
    fn edge_count_conventions() {
        let mut spec = ffl_spec(25, 3.0, 0.5, 1);
        assert_eq!(generate(&spec).unwrap().edge_count(), 38);
        spec.degree = DegreeConvention::Out;
        assert_eq!(generate(&spec).unwrap().edge_count(), 75);
    }

    #[test]
    fn infeasible_specs() {
        // Five FFLs need 15 planted edges; 10 nodes at degree 1 allow 5.
        assert!(matches!(
            generate(&ffl_spec(15, 1.0, 0.5, 0)),
            Err(Error::InfeasibleSpec(_))
        ));
        assert!(matches!(
            generate(&ffl_spec(10, 4.0, 0.5, 0)),
            Err(Error::InfeasibleSpec(_))
        ));
        assert!(matches!(
            generate(&ffl_spec(50, 4.0, 1.5, 0)),
            Err(Error::InfeasibleSpec(_))
        ));
        assert!(matches!(
            generate(&ffl_spec(15, 40.0, 0.5, 0)),
            Err(Error::InfeasibleSpec(_))
        ));
    }

    #[test]
    fn manifest_lines() {
        let text = "# sweep\n100 4 0.5 ffl\n\n200 2 0.25 bifan 3 17\n";
        let specs = parse_manifest(text, Path::new("m.txt"), 5).unwrap();
        assert_eq!(specs.len(), 2);
        assert_eq!((specs[0].n, specs[0].seed, specs[0].plant_count), (100, 5, 5));
        assert_eq!(
            (specs[1].motif.name(), specs[1].plant_count, specs[1].seed),
            ("bifan", 3, 17)
        );
        let err = parse_manifest("10 2 0.5 nope\n", Path::new("m.txt"), 0).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
    }
}
