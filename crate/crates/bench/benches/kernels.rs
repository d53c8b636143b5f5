use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use motifq_core::qaoa::{run_circuit, QaoaParams};
use motifq_core::{
    assemble_objective, builtin_motif, enumerate_embeddings, exact_mis, generate, objective_table, ModelOptions,
    Penalties, SynthSpec,
};

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    for n in [100usize, 400] {
        let net = generate(&SynthSpec::new(n, 6.0, 0.5, builtin_motif("ffl").unwrap(), 1)).unwrap();
        for name in ["ffl", "bifan"] {
            let motif = builtin_motif(name).unwrap();
            group.bench_with_input(BenchmarkId::new(name, n), &net, |b, net| {
                b.iter(|| enumerate_embeddings(black_box(net), &motif, false))
            });
        }
    }
    group.finish();
}

fn compile_and_simulate(c: &mut Criterion) {
    let motif = builtin_motif("ffl").unwrap();
    let mut spec = SynthSpec::new(12, 2.5, 0.5, motif.clone(), 3);
    spec.plant_count = 3;
    let net = generate(&spec).unwrap();
    let objective = assemble_objective(&net, &motif, Penalties::default_for(&net), &ModelOptions::default()).unwrap();
    c.bench_function("objective_table/15q", |b| {
        b.iter(|| objective_table(black_box(&objective.total), 20).unwrap())
    });

    let mut group = c.benchmark_group("run_circuit_p2");
    for r in [10usize, 14, 18] {
        let diag: Vec<f64> = (0..1usize << r)
            .map(|i| (i.count_ones() as f64) - r as f64 / 2.0)
            .collect();
        let params = QaoaParams::new(vec![0.4, 0.9], vec![0.7, 0.2]).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(r), &diag, |b, diag| {
            b.iter(|| run_circuit(black_box(diag), &params).unwrap())
        });
    }
    group.finish();
}

fn exact(c: &mut Criterion) {
    let motif = builtin_motif("cascade").unwrap();
    let mut spec = SynthSpec::new(60, 3.0, 1.0, motif.clone(), 7);
    spec.plant_count = 8;
    let embs = enumerate_embeddings(&generate(&spec).unwrap(), &motif, false);
    c.bench_function("exact_mis/cascade60", |b| {
        b.iter(|| exact_mis(black_box(&embs), Duration::from_secs(10), 64).unwrap())
    });
}

criterion_group!(benches, enumeration, compile_and_simulate, exact);
criterion_main!(benches);
