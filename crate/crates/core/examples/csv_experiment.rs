//! The full protocol on a CSV file: repeated stratified 80/20 splits, a
//! JSON report, per-replication rows and a PR curve for plotting.
//!
//! ```text
//! cargo run --release --example csv_experiment -- [data.csv] [label column] [positive label]
//! ```
//!
//! Without arguments a blob dataset is generated in a temporary directory.

use std::path::PathBuf;

use resmoteboost::boosting::{fit_boosted, BoostConfig, LearnerKind};
use resmoteboost::data::{load_csv, partition_by_class, stratified_split, LabelColumn, SplitSpec};
use resmoteboost::experiment::{run_experiment, DataSource, ExperimentConfig, GenConfig, Method};
use resmoteboost::metrics::{average_precision, pr_curve, write_curve_csv};
use resmoteboost::random::RandomSource;

fn main() -> resmoteboost::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let out_dir = std::env::temp_dir().join("resmoteboost-csv-experiment");
    std::fs::create_dir_all(&out_dir).map_err(|source| resmoteboost::Error::Io {
        path: out_dir.clone(),
        source,
    })?;

    let (path, label_column, positive) = match args.as_slice() {
        [p, rest @ ..] => (
            PathBuf::from(p),
            rest.first().cloned().unwrap_or_else(|| "label".into()),
            rest.get(1).cloned().unwrap_or_else(|| "pos".into()),
        ),
        [] => {
            let p = out_dir.join("blobs.csv");
            let ir = GenConfig {
                n_maj: 400,
                n_min: 80,
                dim: 4,
                sep: 1.5,
                seed: 1,
            }
            .write(&p)?;
            println!("generated {} (IR {ir})", p.display());
            (p, "label".into(), "pos".into())
        }
    };

    let mut cfg = ExperimentConfig::new(
        DataSource::Csv {
            path: path.clone(),
            label_column: label_column.clone(),
            positive_label: positive.clone(),
        },
        Method::ReSmoteboost,
    );
    cfg.replications = 20;
    cfg.seed = 1;
    let report = run_experiment(&cfg)?;
    println!(
        "{} samples, IR {:.2}, minority label {:?}",
        report.n_samples, report.imbalance_ratio, report.minority_label
    );
    for s in &report.summary {
        println!("  {:<22} {:.4} ± {:.4}", s.metric_name, s.mean, s.std_dev);
    }
    let json = out_dir.join("report.json");
    std::fs::write(&json, report.to_json()?).map_err(|source| resmoteboost::Error::Io {
        path: json.clone(),
        source,
    })?;
    let rows = out_dir.join("replications.csv");
    let file = std::fs::File::create(&rows).map_err(|source| resmoteboost::Error::Io {
        path: rows.clone(),
        source,
    })?;
    report.write_replications_csv(file)?;

    // One model, one split, one curve.
    let data = load_csv(&path, &LabelColumn::parse(&label_column), &positive)?;
    let spec = SplitSpec {
        seed: 3,
        ..SplitSpec::default()
    };
    let (train, test) = stratified_split(&data, &spec, &mut spec.rng())?;
    let part = partition_by_class(&train)?;
    let audit = &report.replications[0].audit;
    let model = fit_boosted(
        &train,
        &BoostConfig::re_smoteboost(audit.t_max, audit.k),
        || LearnerKind::Stump.build(),
        &mut RandomSource::new(4),
    )?;
    let mut scores = model.decision_all(&test)?;
    let mut truth = test.labels().to_vec();
    if part.swapped {
        scores.iter_mut().for_each(|s| *s = -*s);
        truth.iter_mut().for_each(|l| *l = l.flip());
    }
    let curve = pr_curve(&scores, &truth)?;
    let pr = out_dir.join("pr_curve.csv");
    write_curve_csv(
        &pr,
        ("recall", "precision"),
        &curve.iter().map(|p| (p.recall, p.precision)).collect::<Vec<_>>(),
    )?;
    println!("average precision {:.4}", average_precision(&curve));
    println!("wrote {}, {} and {}", json.display(), rows.display(), pr.display());
    Ok(())
}
