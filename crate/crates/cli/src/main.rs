use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use leanml::{BatchSize, UpdateRule};
use leanml_cli::{
    compare_reports, effective_repeats, emit_report, parse_model_list, read_reports, render, render_comparison,
    run_benchmark, DatasetSpec, Format, RunConfig, Scaling, Source, Task, Tolerances,
};

#[derive(Parser)]
#[command(name = "bench", version, about = "Time leanml model training on CSV or synthetic data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train models and write a report.
    Run(Box<RunArgs>),
    /// Diff two reports row by row.
    Compare(CompareArgs),
}

#[derive(Args)]
struct RunArgs {
    /// CSV path or `synthetic:ROWSxCOLS:task[:param]`.
    #[arg(long)]
    dataset: String,
    /// Model list such as `mlr,poly:3,knn:5`, or `all`.
    #[arg(long, default_value = "all")]
    model: String,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Fit repetitions; BENCH_REPEATS takes precedence when set.
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json", value_parser = ["json", "csv", "table"])]
    format: String,
    /// Target column of a CSV dataset.
    #[arg(long, default_value = "target")]
    target: String,
    /// Task of a CSV dataset: regression or classification.
    #[arg(long)]
    task: Option<String>,
    #[arg(long, default_value_t = 0.2)]
    val_ratio: f64,
    /// Feature scaling: none, standard or minmax.
    #[arg(long)]
    scale: Option<Scaling>,
    #[arg(long)]
    learning_rate: Option<f64>,
    #[arg(long)]
    momentum: Option<f64>,
    #[arg(long)]
    epochs: Option<usize>,
    /// Mini-batch size; full batch when omitted.
    #[arg(long)]
    batch_size: Option<usize>,
    /// Use bias-corrected Adam updates instead of plain momentum.
    #[arg(long)]
    adam: bool,
    /// SVM regularization strength.
    #[arg(long)]
    lambda: Option<f64>,
    /// SVM training accuracy that ends training early.
    #[arg(long)]
    early_stop: Option<f64>,
    /// Logistic decision threshold.
    #[arg(long)]
    threshold: Option<f64>,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    /// Largest accepted absolute metric difference.
    #[arg(long, default_value_t = 1e-6)]
    metric_tol: f64,
    /// Required time_b / time_a for every row.
    #[arg(long)]
    min_speed_ratio: Option<f64>,
}

fn run_config(args: &RunArgs) -> RunConfig {
    let mut cfg = RunConfig { val_ratio: args.val_ratio, scaling: args.scale, ..RunConfig::default() };
    let opt = &mut cfg.optimizer;
    if let Some(v) = args.learning_rate {
        opt.learning_rate = v;
    }
    if let Some(v) = args.momentum {
        opt.momentum = v;
    }
    if let Some(v) = args.epochs {
        opt.max_epochs = v;
    }
    if let Some(b) = args.batch_size {
        opt.batch_size = BatchSize::Size(b);
    }
    if args.adam {
        opt.update_rule = UpdateRule::adam();
    }
    if let Some(v) = args.lambda {
        cfg.svm_lambda = v;
    }
    if let Some(v) = args.early_stop {
        cfg.early_stop_accuracy = v;
    }
    if let Some(v) = args.threshold {
        cfg.decision_threshold = v;
    }
    cfg
}

fn run(args: RunArgs) -> Result<ExitCode> {
    let env = std::env::var("BENCH_REPEATS").ok();
    let repeats = effective_repeats(args.repeats, env.as_deref())?;
    let source = Source::parse(&args.dataset)?;
    let requested: Option<Task> = args.task.as_deref().map(str::parse).transpose()?;
    let task = match (&source, requested) {
        (Source::Synthetic(r), Some(t)) if r.task != t => bail!("--task {t} contradicts dataset recipe task {}", r.task),
        (Source::Synthetic(r), _) => r.task,
        (Source::Csv(_), t) => t.unwrap_or(Task::Regression),
    };
    let spec = DatasetSpec { source, task, target: args.target.clone(), seed: args.seed };
    let data = spec.materialize().with_context(|| format!("loading dataset {}", args.dataset))?;
    let models = parse_model_list(&args.model, task)?;
    let cfg = run_config(&args);

    let reports: Vec<_> = models.into_iter().map(|m| run_benchmark(&data, m, &cfg, repeats)).collect();
    for r in reports.iter().filter(|r| r.error.is_some()) {
        eprintln!("{}: {}", r.model, r.error.as_deref().unwrap_or_default());
    }
    let format: Format = args.format.parse()?;
    match &args.out {
        Some(path) => emit_report(&reports, format, path).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{}", render(&reports, format)?),
    }
    Ok(ExitCode::SUCCESS)
}

fn compare(args: CompareArgs) -> Result<ExitCode> {
    let a = read_reports(&args.a).with_context(|| format!("reading {}", args.a.display()))?;
    let b = read_reports(&args.b).with_context(|| format!("reading {}", args.b.display()))?;
    let tol = Tolerances { metric_abs: args.metric_tol, min_speed_ratio: args.min_speed_ratio };
    let cmp = compare_reports(&a, &b, &tol)?;
    print!("{}", render_comparison(&cmp));
    Ok(if cmp.passed { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn main() -> Result<ExitCode> {
    match Cli::parse().command {
        Command::Run(args) => run(*args),
        Command::Compare(args) => compare(args),
    }
}
