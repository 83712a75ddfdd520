use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hypersparse::cutsparse::{sparsify_cut, CutPipelineConfig, WeightMode};
use hypersparse::harness::{
    query_scaling_experiment, verify_cut, verify_spectral, CutCheckMode, RunReport, ScalingConfig,
};
use hypersparse::hypercore::{edge_strengths, read_hypergraph, strength_sum, write_hypergraph, EXHAUSTIVE_LIMIT};
use hypersparse::instances::{gen_clique_triples_pair, gen_lb_edge, gen_lb_nbr1_pair, gen_random, gen_tripartite};
use hypersparse::pairsim::sparsify_cut_nbr2;
use hypersparse::spectral::{
    clique_expansion, effective_resistance, spectral_sample_edge, spectral_sample_nbr2, SpectralConfig,
};
use hypersparse::{Capabilities, Hypergraph, OracleHandle};

#[derive(Parser)]
#[command(name = "hypersparse", version, about = "Query-limited hypergraph sparsification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file and a metadata sidecar
    Gen(GenArgs),
    /// Sparsify a hypergraph through oracle queries
    Sparsify(SparsifyArgs),
    /// Compare a sparsifier against the original
    Verify(VerifyArgs),
    /// Print exact edge strengths
    Strengths {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Effective resistance between two vertices of the clique expansion
    Resistance {
        #[arg(short, long)]
        input: PathBuf,
        /// Vertex pair as `u,v`
        #[arg(long, value_parser = parse_pair)]
        pair: (usize, usize),
    },
    /// Query-count experiments
    Experiment {
        #[command(subcommand)]
        kind: ExperimentKind,
    },
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    family: Family,
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Family {
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        r_min: usize,
        #[arg(long, default_value_t = 5)]
        r_max: usize,
        #[arg(long)]
        weighted: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Tripartite {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        c: usize,
    },
    CliqueTriples {
        #[arg(long, default_value_t = 1)]
        copies: usize,
    },
    LbNbr1 {
        #[arg(long, default_value_t = 6)]
        n_side: usize,
    },
    LbEdge {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        regime: u8,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SparsifyMode {
    CutEdge,
    CutNbr2,
    SpectralEdge,
    SpectralNbr2,
}

impl SparsifyMode {
    fn name(self) -> &'static str {
        match self {
            SparsifyMode::CutEdge => "cut-edge",
            SparsifyMode::CutNbr2 => "cut-nbr2",
            SparsifyMode::SpectralEdge => "spectral-edge",
            SparsifyMode::SpectralNbr2 => "spectral-nbr2",
        }
    }

    fn capabilities(self) -> Capabilities {
        match self {
            SparsifyMode::CutEdge | SparsifyMode::SpectralEdge => Capabilities::VALUE_EDGE,
            SparsifyMode::CutNbr2 | SparsifyMode::SpectralNbr2 => Capabilities::VALUE_NBR2,
        }
    }

    fn spectral(self) -> bool {
        matches!(self, SparsifyMode::SpectralEdge | SparsifyMode::SpectralNbr2)
    }
}

#[derive(Args)]
struct SparsifyArgs {
    #[arg(long, value_enum)]
    mode: SparsifyMode,
    #[arg(long)]
    eps: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
    /// Oversampling constant of the cut sampler (default `10 n^3`)
    #[arg(long)]
    beta: Option<f64>,
    /// Constant `C` of the spectral sampling rates
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Force weighted sampling even on unit-weight input
    #[arg(long)]
    weighted: bool,
    /// Skip comparing the output with the input
    #[arg(long)]
    no_check: bool,
    /// Random vectors in the spectral check
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Write `runtime_ms: 0` so reports are byte-reproducible
    #[arg(long)]
    omit_timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyMode {
    Cut,
    Spectral,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    mode: VerifyMode,
    #[arg(long)]
    eps: f64,
    #[arg(short = 'a', long)]
    truth: PathBuf,
    #[arg(short = 'b', long)]
    sparse: PathBuf,
    #[arg(long)]
    report: Option<PathBuf>,
    /// Check this many random cuts instead of all of them
    #[arg(long)]
    random_cuts: Option<u64>,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    omit_timing: bool,
}

#[derive(Subcommand)]
enum ExperimentKind {
    QueryScaling {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_value = "100,1000,10000")]
        m: Vec<usize>,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        seeds: Vec<u64>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

type CliResult<T> = std::result::Result<T, Box<dyn std::error::Error>>;

fn parse_pair(s: &str) -> std::result::Result<(usize, usize), String> {
    let (u, v) = s.split_once(',').ok_or("expected u,v")?;
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| e.to_string());
    Ok((parse(u)?, parse(v)?))
}

fn load(path: &Path) -> CliResult<Hypergraph> {
    Ok(read_hypergraph(BufReader::new(File::open(path)?))?)
}

fn save(h: &Hypergraph, path: &Path) -> CliResult<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_hypergraph(h, &mut w)?;
    w.flush()?;
    Ok(())
}

fn write_json(value: &impl serde::Serialize, path: Option<&Path>) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// `dir/x.hg` becomes `dir/x.<tag>.hg`.
fn tagged(path: &Path, tag: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("instance");
    let name = match path.extension().and_then(|s| s.to_str()) {
        Some(ext) => format!("{stem}.{tag}.{ext}"),
        None => format!("{stem}.{tag}"),
    };
    path.with_file_name(name)
}

fn sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

fn run_gen(args: GenArgs) -> CliResult<bool> {
    let (graphs, metadata): (Vec<(Option<&str>, Hypergraph)>, Value) = match args.family {
        Family::Random {
            n,
            m,
            r_min,
            r_max,
            weighted,
            seed,
        } => {
            let h = gen_random(n, r_min, r_max, m, weighted, seed)?;
            let meta = json!({
                "family": "random",
                "params": {"n": n, "m": m, "r_min": r_min, "r_max": r_max, "weighted": weighted, "seed": seed},
            });
            (vec![(None, h)], meta)
        }
        Family::Tripartite { a, b, c } => {
            let inst = gen_tripartite(a, b, c)?;
            (vec![(None, inst.graph)], inst.metadata)
        }
        Family::CliqueTriples { copies } => {
            let p = gen_clique_triples_pair(copies)?;
            (vec![(Some("h1"), p.h1), (Some("h2"), p.h2)], p.metadata)
        }
        Family::LbNbr1 { n_side } => {
            let p = gen_lb_nbr1_pair(n_side)?;
            (vec![(Some("h1"), p.h1), (Some("h2"), p.h2)], p.metadata)
        }
        Family::LbEdge { n, regime, seed } => {
            let inst = gen_lb_edge(n, regime, seed)?;
            (vec![(None, inst.graph)], inst.metadata)
        }
    };
    match args.output {
        Some(out) => {
            for (tag, h) in &graphs {
                let path = tag.map_or_else(|| out.clone(), |t| tagged(&out, t));
                save(h, &path)?;
            }
            write_json(&metadata, Some(&sidecar(&out)))?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            for (tag, h) in &graphs {
                if let Some(t) = tag {
                    writeln!(lock, "# {t}")?;
                }
                write_hypergraph(h, &mut lock)?;
            }
        }
    }
    Ok(true)
}

fn run_sparsify(args: SparsifyArgs) -> CliResult<bool> {
    let hidden = load(&args.input)?;
    let start = Instant::now();
    let weights = if args.weighted || !hidden.is_unit_weight() {
        WeightMode::Weighted
    } else {
        WeightMode::Unit
    };
    let mut oracle = OracleHandle::with_capabilities(hidden.clone(), args.seed, args.mode.capabilities());
    let (sparse, queries) = match args.mode {
        SparsifyMode::CutEdge | SparsifyMode::CutNbr2 => {
            let mut config = CutPipelineConfig::new(args.eps);
            config.beta = args.beta;
            config.weights = weights;
            let out = if matches!(args.mode, SparsifyMode::CutEdge) {
                sparsify_cut(&mut oracle, &config, args.seed)?
            } else {
                sparsify_cut_nbr2(&mut oracle, &config, args.seed)?
            };
            (out.sparsifier.graph, out.ledger)
        }
        SparsifyMode::SpectralEdge | SparsifyMode::SpectralNbr2 => {
            let mut config = SpectralConfig::new(args.eps);
            config.c = args.c;
            config.weights = weights;
            if matches!(args.mode, SparsifyMode::SpectralEdge) {
                let out = spectral_sample_edge(&mut oracle, &config, args.seed)?;
                (out.sparsifier.graph, out.ledger)
            } else {
                let out = spectral_sample_nbr2(&mut oracle, &config)?;
                (out.sparsifier.graph, out.ledger)
            }
        }
    };
    let mut report = RunReport::new(&hidden, &sparse, args.eps, args.mode.name(), args.seed);
    report.queries = queries;
    if !args.no_check {
        if args.mode.spectral() {
            report.spectral_check = Some(verify_spectral(&hidden, &sparse, args.eps, args.trials, args.seed)?);
        } else {
            let mode = if hidden.n() <= EXHAUSTIVE_LIMIT {
                CutCheckMode::Exhaustive
            } else {
                CutCheckMode::Random {
                    cuts: 10_000,
                    seed: args.seed,
                }
            };
            report.cut_check = Some(verify_cut(&hidden, &sparse, args.eps, mode)?);
        }
    }
    if !args.omit_timing {
        report.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    }
    if let Some(out) = &args.output {
        save(&sparse, out)?;
    }
    match &args.report {
        Some(p) => std::fs::write(p, report.to_json())?,
        None => print!("{}", report.to_json()),
    }
    Ok(report.passed())
}

fn run_verify(args: VerifyArgs) -> CliResult<bool> {
    let truth = load(&args.truth)?;
    let sparse = load(&args.sparse)?;
    let start = Instant::now();
    let mut report = RunReport::new(&truth, &sparse, args.eps, "verify", args.seed);
    match args.mode {
        VerifyMode::Cut => {
            let mode = match args.random_cuts {
                Some(cuts) => CutCheckMode::Random { cuts, seed: args.seed },
                None => CutCheckMode::Exhaustive,
            };
            report.cut_check = Some(verify_cut(&truth, &sparse, args.eps, mode)?);
        }
        VerifyMode::Spectral => {
            report.spectral_check = Some(verify_spectral(&truth, &sparse, args.eps, args.trials, args.seed)?);
        }
    }
    if !args.omit_timing {
        report.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    }
    match &args.report {
        Some(p) => std::fs::write(p, report.to_json())?,
        None => print!("{}", report.to_json()),
    }
    Ok(report.passed())
}

fn run_strengths(input: &Path) -> CliResult<bool> {
    let h = load(input)?;
    let strengths = edge_strengths(&h)?;
    let sum = strength_sum(&h, &strengths);
    let bound = h.n().saturating_sub(1) as f64;
    let edges: Vec<Value> = h
        .edges()
        .iter()
        .map(
            |e| json!({"id": e.id().0, "vertices": e.vertices(), "weight": e.weight(), "strength": strengths[&e.id()]}),
        )
        .collect();
    let within = sum <= bound + 1e-9;
    write_json(
        &json!({"edges": edges, "weight_over_strength": sum, "bound": bound, "within_bound": within}),
        None,
    )?;
    Ok(within)
}

fn run_resistance(input: &Path, (u, v): (usize, usize)) -> CliResult<bool> {
    let h = load(input)?;
    let g = clique_expansion(&h);
    let r = effective_resistance(&g, u, v)?;
    write_json(&json!({"u": u, "v": v, "resistance": r}), None)?;
    Ok(true)
}

fn run_experiment(kind: ExperimentKind) -> CliResult<bool> {
    match kind {
        ExperimentKind::QueryScaling {
            n,
            m,
            eps,
            seeds,
            beta,
            output,
        } => {
            let mut config = ScalingConfig::new(n, m, eps, seeds);
            config.beta = beta;
            let report = query_scaling_experiment(&config)?;
            write_json(&report, output.as_deref())?;
            Ok(report.value_band_ok && report.edge_bound_ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gen(args) => run_gen(args),
        Command::Sparsify(args) => run_sparsify(args),
        Command::Verify(args) => run_verify(args),
        Command::Strengths { input } => run_strengths(&input),
        Command::Resistance { input, pair } => run_resistance(&input, pair),
        Command::Experiment { kind } => run_experiment(kind),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
