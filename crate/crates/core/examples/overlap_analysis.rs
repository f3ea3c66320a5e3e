//! Fisher discriminant ratios of the training set before and after
//! resampling, feature by feature.
//!
//! ```text
//! cargo run --example overlap_analysis
//! ```

use resmoteboost::boosting::{fit_boosted_traced, BoostConfig, LearnerKind};
use resmoteboost::data::{make_gaussian_blobs, Dataset, Label};
use resmoteboost::metrics::overlap_feature_count;
use resmoteboost::random::RandomSource;

fn resampled(data: &Dataset, cfg: &BoostConfig) -> resmoteboost::Result<Dataset> {
    let trace = fit_boosted_traced(data, cfg, || LearnerKind::Stump.build(), &mut RandomSource::new(3))?;
    trace
        .majority
        .relabeled(Label::Negative)
        .concat(&trace.minority.relabeled(Label::Positive))
}

fn main() -> resmoteboost::Result<()> {
    let data = make_gaussian_blobs(400, 80, 5, 1.5, 21)?;
    let k = 16;
    let re = resampled(&data, &BoostConfig::re_smoteboost(10, k))?;
    let rus = resampled(&data, &BoostConfig::rusboost(10, k))?;
    let smote = resampled(&data, &BoostConfig::smoteboost(10, k))?;

    for (name, other) in [("rusboost", &rus), ("smoteboost", &smote), ("original", &data)] {
        let r = overlap_feature_count(&re, other)?;
        println!(
            "re_smoteboost vs {name}: smaller on {} features, larger on {}, ties {}",
            r.count_a_smaller, r.count_b_smaller, r.ties
        );
        for (j, (a, b)) in r.ratios_a.iter().zip(&r.ratios_b).enumerate() {
            println!("  f{j}: {a:.4} vs {b:.4}");
        }
    }
    Ok(())
}
