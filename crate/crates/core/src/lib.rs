//! Identification of node-disjoint regulatory motif embeddings.
//!
//! A network and a motif are compiled into a multilinear pseudo-Boolean
//! objective whose minimizers are exactly the largest node-disjoint embedding
//! sets. The objective is minimized by a simulated QAOA loop, and classical
//! greedy and exact solvers over the embedding conflict graph serve as
//! baseline and ground truth.

pub mod embedding;
pub mod error;
pub mod graph;
pub mod io;
pub mod pbo;
pub mod pipeline;
pub mod qaoa;
pub mod rng;
pub mod solvers;
pub mod stats;
pub mod synth;

pub use embedding::{
    build_conflict_graph, enumerate_embeddings, repair_to_feasible, verify_edge_decomposition, ConflictGraph,
    Decomposition, Embedding, EmbeddingSet, Violation,
};
pub use error::{Error, Result};
pub use graph::{
    builtin_motif, builtin_motifs, canonicalize_motif, relation_match, Edge, EdgeIdx, MotifEdge, MotifPattern, NodeIdx,
    RegulatoryNetwork, Relation,
};
pub use pbo::{
    assemble_objective, build_h_polynomial, objective_table, Avoid, HMode, ModelOptions, Objective, PairExclusion,
    Penalties, PseudoBooleanPolynomial, VariableMap,
};
pub use pipeline::{partition_network, run_identification, Partition, RunConfig, SolutionReport, SolverKind};
pub use solvers::{baseline_greedy, exact_mis, LossMode, SolverResult};
pub use stats::{shuffle_edges, zscore, NullModel, ZScoreReport};
pub use synth::{generate, generate_planted, SynthSpec};
