//! Plain boosting against SMOTEBoost, RUSBoost and RE-SMOTEBoost on
//! overlapping imbalanced blobs.
//!
//! ```text
//! cargo run --release --example compare_boosters -- [replications] [separation]
//! ```

use resmoteboost::experiment::{run_experiment, DataSource, ExperimentConfig, GenConfig, Method};

fn main() -> resmoteboost::Result<()> {
    let mut args = std::env::args().skip(1);
    let replications = args.next().and_then(|a| a.parse().ok()).unwrap_or(100);
    let sep = args.next().and_then(|a| a.parse().ok()).unwrap_or(1.5);
    let data = DataSource::Blobs(GenConfig {
        n_maj: 500,
        n_min: 100,
        dim: 2,
        sep,
        seed: 42,
    });

    println!("{replications} replications, separation {sep}");
    println!(
        "{:<14} {:>16} {:>16} {:>16} {:>16}",
        "method", "recall", "precision", "macro recall", "auc"
    );
    for method in [Method::None, Method::Smoteboost, Method::Rusboost, Method::ReSmoteboost] {
        let mut cfg = ExperimentConfig::new(data.clone(), method);
        cfg.replications = replications;
        cfg.seed = 7;
        let report = run_experiment(&cfg)?;
        let cell = |name: &str| {
            report
                .summary_for(name)
                .map(|s| format!("{:.4} ± {:.4}", s.mean, s.std_dev))
                .unwrap_or_else(|| "-".into())
        };
        println!(
            "{:<14} {:>16} {:>16} {:>16} {:>16}",
            method.as_str(),
            cell("positive.recall"),
            cell("positive.precision"),
            cell("macro.recall"),
            cell("auc")
        );
    }
    Ok(())
}
