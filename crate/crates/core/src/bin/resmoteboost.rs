use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use resmoteboost::boosting::LearnerKind;
use resmoteboost::data::LabelColumn;
use resmoteboost::experiment::{
    compare_overlap, run_experiment_with, DataSource, ExperimentConfig, GenConfig, KSpec, Method, RunOutputs, TMax,
};

#[derive(Parser)]
#[command(
    name = "resmoteboost",
    version,
    about = "Entropy-guided double pruning for imbalanced data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write two Gaussian blobs as CSV and print their imbalance ratio.
    Gen {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n_maj: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n_min: u64,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
        dim: u64,
        #[arg(long, default_value_t = 2.0)]
        sep: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a replicated train/test experiment and write a JSON report.
    Run(RunArgs),
    /// Compare per-feature Fisher ratios of two CSV files.
    CompareOverlap {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value = "label")]
        label_column: String,
        #[arg(long, default_value = "pos")]
        positive_label: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(clap::Args)]
struct RunArgs {
    #[arg(long)]
    data: PathBuf,
    /// Header name or zero-based index of the label column.
    #[arg(long, default_value = "label")]
    label_column: String,
    #[arg(long, default_value = "pos")]
    positive_label: String,
    #[arg(long, default_value = "re_smoteboost")]
    method: String,
    /// stump, gnb or knn.
    #[arg(long, default_value = "stump")]
    base: String,
    /// Per-round count, a fraction of the training majority, or "auto".
    #[arg(long, default_value = "auto")]
    k: String,
    #[arg(long, default_value_t = 5)]
    k_neighbors: usize,
    /// Rounds, or "heuristic".
    #[arg(long, default_value = "heuristic")]
    t_max: String,
    #[arg(long, default_value_t = 0.2)]
    test_fraction: f64,
    #[arg(long, default_value_t = 100)]
    replications: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Stratified k-fold instead of repeated random splits.
    #[arg(long)]
    cv: Option<usize>,
    #[arg(long)]
    no_stratify: bool,
    /// Start every boosting round from the original training pools.
    #[arg(long)]
    fresh_pools: bool,
    #[arg(long, default_value_t = 1.0)]
    learning_rate: f64,
    #[arg(long)]
    out: PathBuf,
    /// Per-replication CSV; defaults to the report path with a `.replications.csv` suffix.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write replication 0's resampled training set here.
    #[arg(long)]
    dump_resampled: Option<PathBuf>,
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.with_file_name(format!("{stem}{suffix}"))
}

fn run(args: RunArgs) -> anyhow::Result<()> {
    let mut cfg = ExperimentConfig::new(
        DataSource::Csv {
            path: args.data.clone(),
            label_column: args.label_column,
            positive_label: args.positive_label,
        },
        args.method.parse::<Method>()?,
    );
    cfg.base = LearnerKind::parse(&args.base)?;
    cfg.k = args.k.parse::<KSpec>()?;
    cfg.k_neighbors = args.k_neighbors;
    cfg.t_max = args.t_max.parse::<TMax>()?;
    cfg.test_fraction = args.test_fraction;
    cfg.replications = args.replications;
    cfg.seed = args.seed;
    cfg.cv_folds = args.cv;
    cfg.stratified = !args.no_stratify;
    cfg.fresh_pools = args.fresh_pools;
    cfg.learning_rate = args.learning_rate;
    cfg.validate()?;

    let outputs = RunOutputs {
        dump_resampled: args.dump_resampled,
    };
    let report = run_experiment_with(&cfg, &outputs).with_context(|| format!("running on {}", args.data.display()))?;
    std::fs::write(&args.out, report.to_json()?).with_context(|| format!("writing {}", args.out.display()))?;
    let csv_path = args.csv.unwrap_or_else(|| sibling(&args.out, ".replications.csv"));
    let file = File::create(&csv_path).with_context(|| format!("writing {}", csv_path.display()))?;
    report.write_replications_csv(BufWriter::new(file))?;

    for name in ["positive.recall", "positive.precision", "macro.recall", "auc"] {
        if let Some(s) = report.summary_for(name) {
            println!("{name:<20} {:.4} ± {:.4}", s.mean, s.std_dev);
        }
    }
    Ok(())
}

fn dispatch(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Gen {
            n_maj,
            n_min,
            dim,
            sep,
            seed,
            out,
        } => {
            let gen = GenConfig {
                n_maj: n_maj as usize,
                n_min: n_min as usize,
                dim: dim as usize,
                sep,
                seed,
            };
            let ir = gen.write(&out)?;
            println!("imbalance ratio {ir:?}");
            Ok(())
        }
        Command::Run(args) => run(args),
        Command::CompareOverlap {
            a,
            b,
            label_column,
            positive_label,
            out,
        } => {
            let report = compare_overlap(&a, &b, &LabelColumn::parse(&label_column), &positive_label)?;
            std::fs::write(&out, serde_json::to_string_pretty(&report)?)
                .with_context(|| format!("writing {}", out.display()))?;
            println!(
                "a smaller {}, b smaller {}, ties {}",
                report.count_a_smaller, report.count_b_smaller, report.ties
            );
            Ok(())
        }
    }
}

/// The error chain on one line, skipping causes already quoted by their parent.
fn one_line(e: &anyhow::Error) -> String {
    let mut out = String::new();
    for cause in e.chain() {
        let text = cause.to_string();
        if !out.contains(&text) {
            if !out.is_empty() {
                out.push_str(": ");
            }
            out.push_str(&text);
        }
    }
    out.replace('\n', " ")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.render().to_string();
            let line = text.lines().next().unwrap_or("error: invalid arguments");
            eprintln!("{}", line.trim());
            return ExitCode::from(2);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", one_line(&e));
            ExitCode::FAILURE
        }
    }
}
