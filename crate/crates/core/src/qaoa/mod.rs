//! Statevector simulation of the p-layer QAOA loop over the edge register.
//!
//! The problem Hamiltonian is diagonal, so it is carried as its diagonal
//! (the objective table) rather than as Pauli strings.

mod nelder_mead;
mod statevector;

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::Rng;
use serde::{Deserialize, Serialize};

pub use nelder_mead::{Minimum, NelderMead};
pub use statevector::{Statevector, DEFAULT_QUBIT_CAP};

use crate::embedding::{repair_to_feasible, verify_edge_decomposition, Decomposition, EmbeddingSet};
use crate::error::{Error, Result};
use crate::graph::{EdgeIdx, MotifPattern, RegulatoryNetwork};
use crate::pbo::{assemble_objective, objective_table, ModelOptions, Penalties, VariableMap};
use crate::rng::{stream_rng, Stream};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QaoaParams {
    pub gammas: Vec<f64>,
    pub betas: Vec<f64>,
}

impl QaoaParams {
    pub fn new(gammas: Vec<f64>, betas: Vec<f64>) -> Result<Self> {
        if gammas.len() != betas.len() {
            return Err(Error::LengthMismatch {
                expected: gammas.len(),
                actual: betas.len(),
            });
        }
        Ok(Self { gammas, betas })
    }

    pub fn layers(&self) -> usize {
        self.gammas.len()
    }

    /// Flat `[γ_1..γ_p, β_1..β_p]` layout used by the optimizer.
    fn from_flat(x: &[f64]) -> Self {
        let p = x.len() / 2;
        Self {
            gammas: x[..p].to_vec(),
            betas: x[p..].to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OptimizerMethod {
    #[default]
    NelderMead,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub method: OptimizerMethod,
    pub restarts: usize,
    pub max_evals: usize,
    pub xtol: f64,
    pub ftol: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            method: OptimizerMethod::NelderMead,
            restarts: 5,
            max_evals: 400,
            xtol: 1e-6,
            ftol: 1e-6,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidConfig("restarts must be at least 1".into()));
        }
        if !(self.xtol > 0.0 && self.ftol > 0.0) {
            return Err(Error::InvalidConfig("optimizer tolerances must be positive".into()));
        }
        Ok(())
    }
}

pub fn initial_state(qubits: usize, qubit_cap: usize) -> Result<Statevector> {
    Statevector::uniform(qubits, qubit_cap)
}

/// `e^{-iβ_p H_B} e^{-iγ_p H_P} … e^{-iβ_1 H_B} e^{-iγ_1 H_P} |+⟩^{⊗r}`.
pub fn run_circuit(diag: &[f64], params: &QaoaParams) -> Result<Statevector> {
    if !diag.len().is_power_of_two() {
        return Err(Error::LengthMismatch {
            expected: diag.len().next_power_of_two(),
            actual: diag.len(),
        });
    }
    let r = diag.len().trailing_zeros() as usize;
    let mut state = Statevector::uniform(r, r)?;
    for (&g, &b) in params.gammas.iter().zip(&params.betas) {
        state.apply_phase(diag, g)?;
        state.apply_mixer(b);
    }
    Ok(state)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizeOutcome {
    pub params: QaoaParams,
    pub expectation: f64,
    /// Best expectation reached by each restart, in order.
    pub restart_values: Vec<f64>,
    pub evaluations: usize,
}

/// Multi-start Nelder-Mead over `(γ, β)`; starts are drawn uniformly from
/// `[0, 2π) × [0, π)` per layer. The best restart wins; earlier restarts win ties.
///
/// The search runs on `diag / max|diag|`, so `γ` is measured in units of the
/// largest objective magnitude. With an integer objective and raw angles,
/// `γ = π` turns the phase into a product of Z flips and the mixer can then
/// park the whole state on a single basis state such as the empty selection;
/// the rescaled search does not reach that point from its start range.
/// Returned angles are in raw units: `run_circuit(diag, &params)` is the
/// optimized state.
pub fn optimize_params(diag: &[f64], layers: usize, config: &OptimizerConfig) -> Result<OptimizeOutcome> {
    if layers == 0 {
        return Err(Error::InvalidConfig("QAOA needs at least one layer".into()));
    }
    config.validate()?;
    let mut rng = stream_rng(config.seed, Stream::Optimizer);
    let nm = NelderMead {
        max_evals: config.max_evals,
        xtol: config.xtol,
        ftol: config.ftol,
        step: 0.25,
    };
    let scale = diag.iter().fold(0.0f64, |a, &d| a.max(d.abs()));
    let scale = if scale > 0.0 && scale.is_finite() { scale } else { 1.0 };
    let raw = |x: &[f64]| {
        let mut p = QaoaParams::from_flat(x);
        p.gammas.iter_mut().for_each(|g| *g /= scale);
        p
    };
    let objective = |x: &[f64]| {
        run_circuit(diag, &raw(x))
            .and_then(|s| s.expectation(diag))
            .unwrap_or(f64::INFINITY)
    };

    let mut best: Option<Minimum> = None;
    let mut restart_values = Vec::with_capacity(config.restarts);
    let mut evaluations = 0;
    for _ in 0..config.restarts {
        let x0: Vec<f64> = (0..layers)
            .map(|_| rng.gen_range(0.0..2.0 * PI))
            .collect::<Vec<_>>()
            .into_iter()
            .chain((0..layers).map(|_| rng.gen_range(0.0..PI)).collect::<Vec<_>>())
            .collect();
        let m = nm.minimize(objective, &x0);
        evaluations += m.evals;
        restart_values.push(m.fx);
        if best.as_ref().is_none_or(|b| m.fx < b.fx) {
            best = Some(m);
        }
    }
    let best = best.expect("restarts >= 1");
    Ok(OptimizeOutcome {
        params: raw(&best.x),
        expectation: best.fx,
        restart_values,
        evaluations,
    })
}

/// Decoded measurement outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleDecode {
    pub embeddings: EmbeddingSet,
    pub motif_count: usize,
    pub edges: BTreeSet<EdgeIdx>,
    /// Basis index of the sample that produced the chosen solution.
    pub raw_best: u64,
    pub raw_best_edges: BTreeSet<EdgeIdx>,
    pub repaired: bool,
    /// `f` at the raw sample and at the decoded solution.
    pub raw_f_value: f64,
    pub f_value: f64,
    pub distinct_samples: usize,
    pub feasible_samples: usize,
}

/// Draws `shots` basis states from `|a_b|²`, decodes each distinct one
/// (verifying, repairing when infeasible) and keeps the decoded solution with
/// the most motifs; ties go to the least edge set, then to unrepaired samples.
#[allow(clippy::too_many_arguments)]
pub fn sample_and_decode(
    state: &Statevector,
    shots: usize,
    net: &RegulatoryNetwork,
    motif: &MotifPattern,
    wildcard: bool,
    vars: &VariableMap,
    diag: &[f64],
    seed: u64,
) -> Result<SampleDecode> {
    if diag.len() != state.len() {
        return Err(Error::LengthMismatch {
            expected: state.len(),
            actual: diag.len(),
        });
    }
    let counts = draw_samples(state, shots, seed)?;
    decode_samples(&counts, net, motif, wildcard, vars, diag)
}

/// Basis index → number of times it was drawn.
pub fn draw_samples(state: &Statevector, shots: usize, seed: u64) -> Result<BTreeMap<usize, usize>> {
    if shots == 0 {
        return Err(Error::InvalidConfig("shots must be at least 1".into()));
    }
    let mut cumulative = Vec::with_capacity(state.len());
    let mut acc = 0.0;
    for p in state.probabilities() {
        acc += p;
        cumulative.push(acc);
    }
    let mut rng = stream_rng(seed, Stream::Sampling);
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for _ in 0..shots {
        let u = rng.gen::<f64>() * acc;
        let idx = cumulative.partition_point(|&c| c <= u).min(state.len() - 1);
        *counts.entry(idx).or_default() += 1;
    }
    Ok(counts)
}

fn decode_samples(
    counts: &BTreeMap<usize, usize>,
    net: &RegulatoryNetwork,
    motif: &MotifPattern,
    wildcard: bool,
    vars: &VariableMap,
    diag: &[f64],
) -> Result<SampleDecode> {
    if counts.is_empty() {
        return Err(Error::InvalidConfig("no samples to decode".into()));
    }
    let mut best: Option<(usize, BTreeSet<EdgeIdx>, bool, usize, EmbeddingSet)> = None;
    let mut feasible_samples = 0;
    for &idx in counts.keys() {
        let raw = vars.decode(idx);
        let (edges, repaired, witness) = match verify_edge_decomposition(net, motif, wildcard, &raw) {
            Decomposition::Feasible(w) => {
                feasible_samples += 1;
                (raw, false, w)
            }
            Decomposition::Infeasible(_) => {
                let fixed = repair_to_feasible(net, motif, wildcard, &raw);
                let w = verify_edge_decomposition(net, motif, wildcard, &fixed)
                    .witness()
                    .cloned()
                    .expect("repair output is feasible");
                (fixed, true, w)
            }
        };
        let count = witness.len();
        let better = match &best {
            None => true,
            Some((bc, be, brep, _, _)) => {
                count > *bc || (count == *bc && (&edges < be || (&edges == be && !repaired && *brep)))
            }
        };
        if better {
            best = Some((count, edges, repaired, idx, witness));
        }
    }
    let (motif_count, edges, repaired, raw_idx, embeddings) = best.expect("at least one shot");
    let decoded_idx = vars.encode(&edges);
    Ok(SampleDecode {
        embeddings,
        motif_count,
        raw_best_edges: vars.decode(raw_idx),
        edges,
        raw_best: raw_idx as u64,
        repaired,
        raw_f_value: diag[raw_idx],
        f_value: diag[decoded_idx],
        distinct_samples: counts.len(),
        feasible_samples,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QaoaConfig {
    pub layers: usize,
    pub shots: usize,
    pub qubit_cap: usize,
    pub optimizer: OptimizerConfig,
    pub model: ModelOptions,
    /// `None` picks `|E| + 1` for every constant.
    pub penalty: Option<f64>,
}

impl Default for QaoaConfig {
    fn default() -> Self {
        Self {
            layers: 2,
            shots: 1024,
            qubit_cap: DEFAULT_QUBIT_CAP,
            optimizer: OptimizerConfig::default(),
            model: ModelOptions::default(),
            penalty: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct QaoaTimings {
    pub compile: Duration,
    pub optimize: Duration,
    pub sample: Duration,
    pub decode: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QaoaOutcome {
    pub decoded: SampleDecode,
    pub optimized: OptimizeOutcome,
    pub qubits: usize,
    pub terms: usize,
    pub timings: QaoaTimings,
}

/// Compile, optimize, sample and decode on one (sub)network.
pub fn solve(net: &RegulatoryNetwork, motif: &MotifPattern, config: &QaoaConfig) -> Result<QaoaOutcome> {
    let t = Instant::now();
    let penalties = config
        .penalty
        .map(Penalties::uniform)
        .unwrap_or_else(|| Penalties::default_for(net));
    let objective = assemble_objective(net, motif, penalties, &config.model)?;
    let diag = objective_table(&objective.total, config.qubit_cap)?;
    let compile = t.elapsed();

    let t = Instant::now();
    let optimized = optimize_params(&diag, config.layers, &config.optimizer)?;
    let state = run_circuit(&diag, &optimized.params)?;
    let optimize = t.elapsed();

    let t = Instant::now();
    let counts = draw_samples(&state, config.shots, config.optimizer.seed)?;
    let sample = t.elapsed();

    let t = Instant::now();
    let decoded = decode_samples(&counts, net, motif, config.model.wildcard, &objective.vars, &diag)?;
    let decode = t.elapsed();

    Ok(QaoaOutcome {
        decoded,
        optimized,
        qubits: objective.vars.len(),
        terms: objective.total.term_count(),
        timings: QaoaTimings {
            compile,
            optimize,
            sample,
            decode,
        },
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

    #[test]
    fn circuit_identities() {
        let diag = [0.0, 3.0, -1.0, 2.0];
        let uniform = Statevector::uniform(2, 20).unwrap();
        assert_eq!(
            run_circuit(&diag, &QaoaParams::new(vec![], vec![]).unwrap()).unwrap(),
            uniform
        );
        assert_eq!(
            run_circuit(&diag, &QaoaParams::new(vec![0.0], vec![0.0]).unwrap()).unwrap(),
            uniform
        );
        let s = run_circuit(
            &diag,
            &QaoaParams::new(vec![0.3, 1.1, 2.0], vec![0.2, 0.9, 0.4]).unwrap(),
        )
        .unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-10);
        assert!(QaoaParams::new(vec![0.1], vec![]).is_err());
    }

    #[test]
    fn constant_diagonal_is_flat() {
        let out = optimize_params(&[4.0; 8], 1, &OptimizerConfig::default()).unwrap();
        assert!((out.expectation - 4.0).abs() < 1e-12);
    }

    #[test]
    fn single_qubit_is_solved_at_one_layer() {
        let out = optimize_params(
            &[0.0, -1.0],
            1,
            &OptimizerConfig {
                seed: 3,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(out.expectation <= -0.99, "{out:?}");
    }

    #[test]
    fn optimizer_is_deterministic() {
        let diag = [0.0, -1.0, -1.0, 5.0, 2.0, -3.0, 1.0, 0.5];
        let cfg = OptimizerConfig {
            seed: 11,
            ..Default::default()
        };
        let a = optimize_params(&diag, 2, &cfg).unwrap();
        let b = optimize_params(&diag, 2, &cfg).unwrap();
        assert_eq!(
            a.params.gammas.iter().map(|v| v.to_bits()).collect::<Vec<_>>(),
            b.params.gammas.iter().map(|v| v.to_bits()).collect::<Vec<_>>()
        );
        assert_eq!(a, b);
    }

    #[test]
    fn restarts_are_monotone() {
        let diag = [0.0, -1.0, -1.0, 5.0, 2.0, -3.0, 1.0, 0.5];
        let mut prev = f64::INFINITY;
        for restarts in 1..=5 {
            let cfg = OptimizerConfig {
                seed: 5,
                restarts,
                ..Default::default()
            };
            let out = optimize_params(&diag, 1, &cfg).unwrap();
            assert!(out.expectation <= prev);
            prev = out.expectation;
        }
    }

    #[test]
    fn decode_basis_states() {
        let ffl = builtin_motif("ffl").unwrap();
        // Two FFLs sharing node c.
        let g = net("a\tb\tA\na\tc\tA\nb\tc\tR\nc\te\tA\nc\tf\tA\ne\tf\tR\n");
        let vars = VariableMap::identity(&g);
        let diag = vec![0.0; 64];

        let feasible = Statevector::basis(6, 0b000111, 20).unwrap();
        let d = sample_and_decode(&feasible, 16, &g, &ffl, false, &vars, &diag, 1).unwrap();
        assert_eq!(d.edges, [0, 1, 2].into());
        assert!(!d.repaired);
        assert_eq!(d.motif_count, 1);

        let union = Statevector::basis(6, 0b111111, 20).unwrap();
        let d = sample_and_decode(&union, 16, &g, &ffl, false, &vars, &diag, 1).unwrap();
        assert!(d.repaired);
        assert_eq!(d.motif_count, 1);
        assert_eq!(d.edges, [0, 1, 2].into());
        assert_eq!(d.raw_best_edges.len(), 6);
    }

    #[test]
    fn planted_cascade_end_to_end() {
        let g = net("x\ty\tA\ny\tz\tA\nz\tx\tA\n");
        let out = solve(&g, &builtin_motif("cascade").unwrap(), &QaoaConfig::default()).unwrap();
        assert_eq!(out.decoded.motif_count, 1);
        assert_eq!(out.qubits, 3);
        let basis = Statevector::basis(3, 0b111, 20).unwrap();
        let obj = assemble_objective(
            &g,
            &builtin_motif("cascade").unwrap(),
            Penalties::uniform(10.0),
            &ModelOptions::default(),
        )
        .unwrap();
        let diag = objective_table(&obj.total, 20).unwrap();
        assert_eq!(basis.expectation(&diag).unwrap(), -3.0);
    }
}
