//! Criterion benchmarks for the motifq kernels live in `benches/`.
