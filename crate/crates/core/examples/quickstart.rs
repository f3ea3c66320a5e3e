//! Train RE-SMOTEBoost on imbalanced blobs and score it on a held-out split.
//!
//! ```text
//! cargo run --example quickstart
//! ```

use resmoteboost::boosting::{default_k, fit_boosted, heuristic_tmax, BoostConfig, LearnerKind};
use resmoteboost::data::{make_gaussian_blobs, partition_by_class, stratified_split, SplitSpec};
use resmoteboost::metrics::evaluate;
use resmoteboost::random::RandomSource;

fn main() -> resmoteboost::Result<()> {
    let data = make_gaussian_blobs(500, 100, 2, 1.5, 42)?;
    let spec = SplitSpec {
        seed: 1,
        ..SplitSpec::default()
    };
    let (train, test) = stratified_split(&data, &spec, &mut spec.rng())?;

    let part = partition_by_class(&train)?;
    let (n_maj, n_min) = (part.majority.len(), part.minority.len());
    let k = default_k(n_maj, n_min);
    let t_max = heuristic_tmax(n_maj, n_min, k)?;
    println!("train {n_maj}/{n_min}, k = {k}, t_max = {t_max}");

    let cfg = BoostConfig::re_smoteboost(t_max, k);
    let model = fit_boosted(&train, &cfg, || LearnerKind::Stump.build(), &mut RandomSource::new(7))?;
    for log in &model.training_log {
        println!(
            "round {:>2}: error {:.4}  alpha {:.4}  pools {}/{}",
            log.iteration, log.error, log.alpha, log.majority_size, log.minority_size
        );
    }

    let report = evaluate(&model.predict_all(&test)?, &model.decision_all(&test)?, test.labels())?;
    println!(
        "test recall {:.3}  precision {:.3}  g-means {:.3}  auc {:.3}",
        report.positive.recall,
        report.positive.precision,
        report.positive.g_means,
        report.auc.unwrap_or(f64::NAN)
    );
    Ok(())
}
