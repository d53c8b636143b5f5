use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use motifq_core::io::{
    filter_by_gene_list, load_motif, read_gene_list, read_network, write_json, write_network, write_summary_csv,
    NetworkFormat, SummaryRow,
};
use motifq_core::pipeline::{RunOutputs, SolutionReport};
use motifq_core::stats::NullModel;
use motifq_core::synth::{parse_manifest, DegreeConvention, SynthSpec, DEFAULT_PLANT_COUNT};
use motifq_core::{
    builtin_motifs, generate, run_identification, zscore, HMode, LossMode, MotifPattern, PairExclusion,
    RegulatoryNetwork, RunConfig, SolverKind,
};

#[derive(Parser)]
#[command(name = "motifq", version, about = "Node-disjoint regulatory motif identification")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Repeat for more log output.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find the largest node-disjoint embedding set of a motif.
    Find(FindArgs),
    /// Generate synthetic networks with planted motifs.
    Generate(GenerateArgs),
    /// z-score of a motif count against shuffled networks.
    Zscore(ZscoreArgs),
    /// Run several solvers over a manifest of synthetic instances.
    Compare(CompareArgs),
    /// List the builtin motifs, or print one as an edge list.
    Motifs {
        #[arg(long)]
        dump: Option<String>,
    },
}

#[derive(Args, Clone, Default)]
struct SolverArgs {
    #[arg(long)]
    solver: Option<SolverKind>,
    /// QAOA layers.
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    shots: Option<usize>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    max_evals: Option<usize>,
    /// Penalty constant for every constraint term (default |E|+1).
    #[arg(long)]
    penalty: Option<f64>,
    #[arg(long)]
    qubit_cap: Option<usize>,
    #[arg(long)]
    h_mode: Option<HMode>,
    #[arg(long)]
    exclusion: Option<PairExclusion>,
    /// Whether Unknown edges match any motif label (default: on for trrust input).
    #[arg(long, value_parser = parse_switch)]
    wildcard: Option<bool>,
    #[arg(long, env = "MOTIFQ_SEED")]
    seed: Option<u64>,
    #[arg(long)]
    loss: Option<LossMode>,
    #[arg(long)]
    exact_budget_ms: Option<u64>,
    #[arg(long)]
    exact_cap: Option<usize>,
    #[arg(long)]
    term_cap: Option<usize>,
    /// Keep edges that lie in no embedding.
    #[arg(long)]
    no_prune: bool,
}

fn parse_switch(s: &str) -> Result<bool, String> {
    match s {
        "on" | "true" | "yes" => Ok(true),
        "off" | "false" | "no" => Ok(false),
        other => Err(format!("expected on or off, got '{other}'")),
    }
}

impl SolverArgs {
    fn apply(&self, cfg: &mut RunConfig) {
        macro_rules! set {
            ($($field:ident),*) => {$(if let Some(v) = self.$field { cfg.$field = v; })*};
        }
        set!(
            solver,
            p,
            shots,
            restarts,
            max_evals,
            qubit_cap,
            h_mode,
            exclusion,
            wildcard,
            seed,
            loss,
            exact_budget_ms,
            exact_cap,
            term_cap
        );
        if self.penalty.is_some() {
            cfg.penalty = self.penalty;
        }
        if self.no_prune {
            cfg.prune = false;
        }
    }
}

#[derive(Args)]
struct InputArgs {
    /// Network file.
    #[arg(long)]
    net: Option<PathBuf>,
    #[arg(long)]
    format: Option<NetworkFormat>,
    /// Builtin motif name or motif edge-list file.
    #[arg(long)]
    motif: Option<String>,
    /// Gene list restricting the network (`symbol` or `symbol<TAB>score` lines).
    #[arg(long)]
    genes: Option<PathBuf>,
    #[arg(long)]
    min_score: Option<f64>,
}

#[derive(Args)]
struct FindArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    solver: SolverArgs,
    /// Start from a saved config or report; other flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Report JSON (default: stdout). Timings go to `<out>.timings.json`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Summary CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, required_unless_present = "manifest")]
    n: Option<usize>,
    #[arg(long, required_unless_present = "manifest")]
    d: Option<f64>,
    #[arg(long, required_unless_present = "manifest")]
    r: Option<f64>,
    #[arg(long, default_value = "ffl")]
    motif: String,
    #[arg(long, default_value_t = DEFAULT_PLANT_COUNT)]
    plants: usize,
    #[arg(long, env = "MOTIFQ_SEED", default_value_t = 0)]
    seed: u64,
    /// `total`: n·d/2 edges; `out`: n·d edges.
    #[arg(long, default_value = "total")]
    degree: DegreeConvention,
    /// Sweep manifest, one `n d r motif [plants [seed]]` line per network.
    #[arg(long, conflicts_with_all = ["n", "d", "r"])]
    manifest: Option<PathBuf>,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args)]
struct ZscoreArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long, default_value_t = 50)]
    replicates: usize,
    #[arg(long, default_value = "degree-preserving")]
    null: NullModel,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    manifest: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "qaoa,baseline,exact")]
    solvers: Vec<SolverKind>,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long, default_value = "total")]
    degree: DegreeConvention,
    /// Instances solved at once.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Errors that are the caller's fault rather than the data's.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let is_usage = e.chain().any(|c| {
                c.is::<UsageError>() || matches!(c.downcast_ref(), Some(motifq_core::Error::InvalidConfig(_)))
            });
            ExitCode::from(if is_usage { 1 } else { 2 })
        }
    }
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Find(args) => find(args),
        Command::Generate(args) => generate_cmd(args),
        Command::Zscore(args) => zscore_cmd(args),
        Command::Compare(args) => compare(args),
        Command::Motifs { dump } => motifs(dump),
    }
}

/// A bare config, or the `config` object of a saved report.
fn load_config(path: &Path) -> anyhow::Result<RunConfig> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let inner = value.get("config").cloned().unwrap_or(value);
    serde_json::from_value(inner).with_context(|| format!("{} is not a run config", path.display()))
}

/// Fills `cfg.inputs` from flags, loads and filters the network, loads the motif.
fn prepare(
    cfg: &mut RunConfig,
    input: &InputArgs,
    solver: &SolverArgs,
    from_file: bool,
) -> anyhow::Result<(RegulatoryNetwork, MotifPattern)> {
    if let Some(net) = &input.net {
        cfg.inputs.network = Some(net.clone());
    }
    if let Some(f) = input.format {
        cfg.inputs.format = f;
    }
    if let Some(m) = &input.motif {
        cfg.inputs.motif = m.clone();
    }
    if let Some(g) = &input.genes {
        cfg.inputs.genes = Some(g.clone());
    }
    if let Some(s) = input.min_score {
        cfg.inputs.min_score = s;
    }
    if !from_file {
        cfg.wildcard = cfg.inputs.format == NetworkFormat::Trrust;
    }
    solver.apply(cfg);

    let path = cfg
        .inputs
        .network
        .clone()
        .ok_or_else(|| usage("no network given (use --net)"))?;
    let mut net = read_network(&path, cfg.inputs.format)?;
    if let Some(genes) = &cfg.inputs.genes {
        let keep = read_gene_list(genes, cfg.inputs.min_score)?;
        net = filter_by_gene_list(&net, &keep);
        log::info!(
            "gene filter kept {} nodes, {} edges",
            net.node_count(),
            net.edge_count()
        );
    }
    let motif = load_motif(&cfg.inputs.motif)?;
    Ok((net, motif))
}

fn summary_row(report: &SolutionReport, instance: &str, spec: Option<&SynthSpec>) -> SummaryRow {
    SummaryRow {
        instance: instance.to_owned(),
        motif: report.motif.name().to_owned(),
        solver: report.solver.as_str().to_owned(),
        motif_count: report.motif_count,
        activation_count: report.activation_count,
        repression_count: report.repression_count,
        unknown_count: report.unknown_count,
        elapsed_ms: report.timings.total_ms,
        seed: report.seed,
        n: spec.map(|s| s.n),
        d: spec.map(|s| s.d),
        r: spec.map(|s| s.r_act),
    }
}

fn find(args: FindArgs) -> anyhow::Result<()> {
    let from_file = args.config.is_some();
    let mut cfg = match &args.config {
        Some(p) => load_config(p)?,
        None => RunConfig::default(),
    };
    let (net, motif) = prepare(&mut cfg, &args.input, &args.solver, from_file)?;
    cfg.outputs = RunOutputs {
        report: args.out.clone(),
        csv: args.csv.clone(),
    };
    let report = run_identification(&net, &motif, &cfg)?;
    let json = report.to_json()?;
    match &cfg.outputs.report {
        Some(out) => {
            fs::write(out, &json).with_context(|| format!("writing {}", out.display()))?;
            let mut sidecar = out.clone().into_os_string();
            sidecar.push(".timings.json");
            fs::write(&sidecar, report.timings_json()?)?;
        }
        None => std::io::stdout().write_all(json.as_bytes())?,
    }
    if let Some(csv) = &cfg.outputs.csv {
        let file = fs::File::create(csv).with_context(|| format!("creating {}", csv.display()))?;
        write_summary_csv(file, &[summary_row(&report, net.name(), None)])?;
    }
    eprintln!(
        "{}: {} of {} {} embeddings selected ({}), AC {} RC {} UC {}",
        net.name(),
        report.motif_count,
        report.candidate_embeddings,
        motif.name(),
        report.solver.as_str(),
        report.activation_count,
        report.repression_count,
        report.unknown_count
    );
    Ok(())
}

fn generate_cmd(args: GenerateArgs) -> anyhow::Result<()> {
    let specs = match &args.manifest {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let mut specs = parse_manifest(&text, path, args.seed)?;
            for s in &mut specs {
                s.degree = args.degree;
            }
            specs
        }
        None => {
            let motif = load_motif(&args.motif)?;
            let (n, d, r) = match (args.n, args.d, args.r) {
                (Some(n), Some(d), Some(r)) => (n, d, r),
                _ => return Err(usage("--n, --d and --r are required without --manifest")),
            };
            vec![SynthSpec {
                plant_count: args.plants,
                degree: args.degree,
                ..SynthSpec::new(n, d, r, motif, args.seed)
            }]
        }
    };
    fs::create_dir_all(&args.out_dir)?;
    let nets: Vec<RegulatoryNetwork> = specs.par_iter().map(generate).collect::<Result<_, _>>()?;
    for (spec, net) in specs.iter().zip(&nets) {
        let path = args.out_dir.join(format!("{}.tsv", spec.instance_name()));
        write_network(&path, net)?;
        println!("{}", path.display());
    }
    write_json(&args.out_dir.join("specs.json"), &specs)?;
    Ok(())
}

fn zscore_cmd(args: ZscoreArgs) -> anyhow::Result<()> {
    let mut cfg = RunConfig::default();
    let (net, motif) = prepare(&mut cfg, &args.input, &args.solver, false)?;
    let report = zscore(&net, &motif, args.replicates, &cfg, cfg.seed, args.null)?;
    let json = serde_json::to_string_pretty(&report)? + "\n";
    match &args.out {
        Some(out) => fs::write(out, &json)?,
        None => std::io::stdout().write_all(json.as_bytes())?,
    }
    if let Some(csv) = &args.csv {
        motifq_core::stats::ZScoreReport::write_csv(fs::File::create(csv)?, std::slice::from_ref(&report))?;
    }
    eprintln!(
        "{}: observed {}, null {:.3} ± {:.3}, z = {:.3}",
        report.network, report.observed, report.null_mean, report.null_std, report.z
    );
    Ok(())
}

fn compare(args: CompareArgs) -> anyhow::Result<()> {
    let text = fs::read_to_string(&args.manifest).with_context(|| format!("reading {}", args.manifest.display()))?;
    let mut base = RunConfig::default();
    args.solver.apply(&mut base);
    let mut specs = parse_manifest(&text, &args.manifest, base.seed)?;
    for s in &mut specs {
        s.degree = args.degree;
    }
    if args.jobs == 0 {
        return Err(usage("--jobs must be at least 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(args.jobs).build()?;
    let rows: Vec<Vec<SummaryRow>> = pool.install(|| {
        specs
            .par_iter()
            .map(|spec| -> anyhow::Result<Vec<SummaryRow>> {
                let net = generate(spec)?;
                args.solvers
                    .iter()
                    .map(|&solver| {
                        let cfg = RunConfig {
                            solver,
                            seed: spec.seed,
                            ..base.clone()
                        };
                        let report = run_identification(&net, &spec.motif, &cfg)?;
                        Ok(summary_row(&report, &spec.instance_name(), Some(spec)))
                    })
                    .collect()
            })
            .collect::<anyhow::Result<_>>()
    })?;
    let rows: Vec<SummaryRow> = rows.into_iter().flatten().collect();
    match &args.out {
        Some(out) => write_summary_csv(fs::File::create(out)?, &rows)?,
        None => write_summary_csv(std::io::stdout().lock(), &rows)?,
    }
    Ok(())
}

fn motifs(dump: Option<String>) -> anyhow::Result<()> {
    match dump {
        Some(name) => print!("{}", load_motif(&name)?.to_tsv()),
        None => {
            for m in builtin_motifs() {
                println!("{}\t{} nodes\t{} edges", m.name(), m.size(), m.edge_count());
            }
        }
    }
    Ok(())
}
