use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use vqdist::harness::records::{append_run, HistoryRecord, ResultRecord};
use vqdist::harness::{
    emit_plotdata, gradcheck, read_histories, read_records, run_single, run_sweep, CircuitRef,
    ExperimentConfig, GradcheckOptions, PlotKind,
};
use vqdist::{catalog_all, template_to_json, CostKind, Error, InitScheme, TargetKind};

const EXIT_USAGE: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;
const EXIT_GRADCHECK: u8 = 3;

#[derive(Parser)]
#[command(name = "vqdist", version, about = "Train variational circuits to load probability distributions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train one circuit against one target.
    Run(RunArgs),
    /// Run a full (circuit x target x seed) sweep.
    Sweep(SweepArgs),
    /// Compare parameter-shift gradients with finite differences.
    Gradcheck(GradcheckArgs),
    /// Dump catalog circuits in the ansatz file format.
    Catalog(CatalogArgs),
    /// Emit CSV plot data from a sweep directory.
    Plotdata(PlotdataArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Uniform,
    Normal,
    Binomial,
    Poisson,
}

#[derive(Clone, Copy, ValueEnum)]
enum CostArg {
    Lse,
    Kl,
    Js,
}

impl From<CostArg> for CostKind {
    fn from(c: CostArg) -> Self {
        match c {
            CostArg::Lse => CostKind::Lse,
            CostArg::Kl => CostKind::Kl,
            CostArg::Js => CostKind::Js,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum InitArg {
    Zeros,
    Uniform,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlotArg {
    Histogram,
    Accuracy,
    Trace,
}

#[derive(Args)]
struct TargetParams {
    /// Binomial success probability.
    #[arg(long)]
    p: Option<f64>,
    /// Poisson rate.
    #[arg(long)]
    lambda: Option<f64>,
}

impl TargetParams {
    fn build(&self, t: TargetArg) -> TargetKind {
        match t {
            TargetArg::Uniform => TargetKind::Uniform,
            TargetArg::Normal => TargetKind::Normal,
            TargetArg::Binomial => TargetKind::Binomial {
                p: self.p.unwrap_or(vqdist::targets::DEFAULT_BINOMIAL_P),
            },
            TargetArg::Poisson => TargetKind::Poisson {
                lambda: self.lambda.unwrap_or(vqdist::targets::DEFAULT_POISSON_LAMBDA),
            },
        }
    }
}

#[derive(Args)]
struct TrainArgs {
    #[arg(long)]
    stepsize: Option<f64>,
    #[arg(long)]
    iters: Option<usize>,
    /// Momentum coefficient; the flag alone selects 0.9.
    #[arg(long, num_args = 0..=1, default_missing_value = "0.9")]
    momentum: Option<f64>,
    #[arg(long, value_enum)]
    cost: Option<CostArg>,
    #[arg(long, value_enum)]
    init: Option<InitArg>,
}

impl TrainArgs {
    fn apply(&self, train: &mut vqdist::TrainConfig) {
        if let Some(s) = self.stepsize {
            train.stepsize = s;
        }
        if let Some(i) = self.iters {
            train.iterations = i;
        }
        if let Some(m) = self.momentum {
            train.momentum = m;
        }
        if let Some(c) = self.cost {
            train.cost = c.into();
        }
        if let Some(i) = self.init {
            train.init = match i {
                InitArg::Zeros => InitScheme::Zeros,
                InitArg::Uniform => InitScheme::UniformAngles,
            };
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// Catalog id (1-22) or path to an ansatz file.
    #[arg(long)]
    circuit: String,
    #[arg(long, value_enum, default_value = "normal")]
    target: TargetArg,
    #[command(flatten)]
    target_params: TargetParams,
    #[command(flatten)]
    train: TrainArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Append the record and history to this directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Restrict to these circuits (repeatable).
    #[arg(long)]
    circuit: Vec<String>,
    /// Restrict to these targets (repeatable).
    #[arg(long, value_enum)]
    target: Vec<TargetArg>,
    #[command(flatten)]
    target_params: TargetParams,
    #[command(flatten)]
    train: TrainArgs,
    /// Comma-separated seed list.
    #[arg(long, value_delimiter = ',')]
    seeds: Option<Vec<u64>>,
    #[arg(long, default_value_t = default_workers())]
    workers: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GradcheckArgs {
    /// Circuits to check (repeatable); defaults to the whole catalog.
    #[arg(long)]
    circuit: Vec<String>,
    /// Comma-separated seeds, one random parameter point each.
    #[arg(long, value_delimiter = ',')]
    seeds: Option<Vec<u64>>,
    #[arg(long, default_value_t = vqdist::harness::gradcheck::DEFAULT_STEP)]
    h: f64,
    #[arg(long, default_value_t = vqdist::harness::gradcheck::DEFAULT_TOLERANCE)]
    tol: f64,
    #[arg(long, value_enum)]
    cost: Vec<CostArg>,
}

#[derive(Args)]
struct CatalogArgs {
    /// Write one `circuit_NN.json` per circuit here instead of printing.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    circuit: Vec<u32>,
}

#[derive(Args)]
struct PlotdataArgs {
    /// Sweep output directory holding records.ndjson.
    #[arg(long)]
    records: PathBuf,
    #[arg(long, value_enum)]
    kind: PlotArg,
    #[arg(long)]
    out: PathBuf,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn fail(err: Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(if err.is_numerical() { EXIT_NUMERICAL } else { EXIT_USAGE })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Gradcheck(a) => cmd_gradcheck(a),
        Command::Catalog(a) => cmd_catalog(a),
        Command::Plotdata(a) => cmd_plotdata(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => fail(e),
    }
}

fn cmd_run(args: RunArgs) -> Result<ExitCode, Error> {
    let template = CircuitRef::parse_arg(&args.circuit).resolve()?;
    let target = args.target_params.build(args.target);
    let mut train = vqdist::TrainConfig {
        seed: args.seed,
        ..Default::default()
    };
    args.train.apply(&mut train);
    let (trace, wall) = run_single(&template, target, &train)?;
    println!("circuit      {} ({}, {} qubits)", template.id(), template.family(), template.n_qubits());
    println!("target       {target}");
    println!("cost         {}", train.cost);
    println!("initial      {:.6e}", trace.initial_cost());
    println!("final        {:.6e}", trace.final_cost());
    println!("iterations   {}", trace.iterations_run());
    println!("distribution {:?}", trace.final_dist.values());
    if let Some(dir) = args.out {
        let key = vqdist::harness::records::run_key(template.id(), 0, &target, args.seed);
        let record = ResultRecord {
            run_key: key.clone(),
            circuit_id: template.id().to_string(),
            circuit_index: 0,
            family: template.family(),
            n_qubits: template.n_qubits(),
            target,
            target_index: 0,
            seed: args.seed,
            cost: train.cost,
            initial_cost: trace.initial_cost(),
            final_cost: trace.final_cost(),
            iterations: trace.iterations_run(),
            converged_at: trace.converged_at,
            wall_time_s: wall,
            final_params: trace.final_params.clone(),
            final_dist: trace.final_dist.values().to_vec(),
        };
        let history = HistoryRecord {
            run_key: key,
            cost_history: trace.cost_history,
        };
        append_run(&dir, &record, &history)?;
        println!("wrote        {}", dir.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode, Error> {
    let mut config = match &args.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if !args.circuit.is_empty() {
        config.circuits = args.circuit.iter().map(|c| CircuitRef::parse_arg(c)).collect();
    }
    if !args.target.is_empty() {
        config.targets = args.target.iter().map(|t| args.target_params.build(*t)).collect();
    } else {
        for t in &mut config.targets {
            match t {
                TargetKind::Binomial { p } => *p = args.target_params.p.unwrap_or(*p),
                TargetKind::Poisson { lambda } => *lambda = args.target_params.lambda.unwrap_or(*lambda),
                _ => {}
            }
        }
    }
    args.train.apply(&mut config.train);
    if let Some(seeds) = args.seeds {
        config.seeds = seeds;
    }
    if let Some(out) = args.out {
        config.output_dir = out;
    }
    let runs = config.circuits.len() * config.targets.len() * config.seeds.len();
    eprintln!("sweep: {runs} runs on {} workers -> {}", args.workers, config.output_dir.display());
    let outcome = run_sweep(&config, args.workers)?;
    println!("circuit,family,target,runs,median_final_cost,min_final_cost");
    for row in &outcome.summary {
        println!(
            "{},{},{},{},{:.6e},{:.6e}",
            row.circuit_id, row.family, row.target, row.runs, row.median_final_cost, row.min_final_cost
        );
    }
    if outcome.failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        for f in &outcome.failures {
            eprintln!("run {} failed: {}", f.run_key, f.error);
        }
        Ok(ExitCode::from(EXIT_NUMERICAL))
    }
}

fn cmd_gradcheck(args: GradcheckArgs) -> Result<ExitCode, Error> {
    let templates = if args.circuit.is_empty() {
        catalog_all()
    } else {
        args.circuit
            .iter()
            .map(|c| CircuitRef::parse_arg(c).resolve())
            .collect::<Result<Vec<_>, _>>()?
    };
    let mut options = GradcheckOptions {
        h: args.h,
        tolerance: args.tol,
        ..Default::default()
    };
    if let Some(seeds) = args.seeds {
        options.seeds = seeds;
    }
    if !args.cost.is_empty() {
        options.costs = args.cost.iter().map(|&c| c.into()).collect();
    }
    let report = gradcheck(&templates, &options)?;
    println!("circuit,n_params,comparisons,max_deviation,status");
    for row in &report.rows {
        println!(
            "{},{},{},{:.3e},{}",
            row.circuit_id,
            row.n_params,
            row.comparisons,
            row.max_deviation,
            if row.passed { "pass" } else { "FAIL" }
        );
    }
    println!(
        "max deviation {:.3e} (h = {:e}, tolerance = {:e})",
        report.max_deviation(),
        report.h,
        report.tolerance
    );
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_GRADCHECK)
    })
}

fn cmd_catalog(args: CatalogArgs) -> Result<ExitCode, Error> {
    let templates: Vec<_> = if args.circuit.is_empty() {
        catalog_all()
    } else {
        args.circuit
            .iter()
            .map(|&id| vqdist::catalog_get(id))
            .collect::<Result<_, _>>()?
    };
    match args.out {
        Some(dir) => {
            std::fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
            for t in &templates {
                let path = dir.join(format!("circuit_{:0>2}.json", t.id()));
                std::fs::write(&path, template_to_json(t) + "\n")
                    .map_err(|e| Error::io(&path, e))?;
                println!("{}", path.display());
            }
        }
        None => {
            let docs: Vec<String> = templates.iter().map(template_to_json).collect();
            println!("[\n{}\n]", docs.join(",\n"));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_plotdata(args: PlotdataArgs) -> Result<ExitCode, Error> {
    let records = read_records(&args.records)?;
    let kind = match args.kind {
        PlotArg::Histogram => PlotKind::Histogram,
        PlotArg::Accuracy => PlotKind::Accuracy,
        PlotArg::Trace => PlotKind::Trace,
    };
    let histories = match kind {
        PlotKind::Trace => read_histories(&args.records)?,
        _ => Default::default(),
    };
    let files = emit_plotdata(&records, &histories, kind, &args.out)?;
    println!("wrote {} file(s) to {}", files.len(), args.out.display());
    Ok(ExitCode::SUCCESS)
}
