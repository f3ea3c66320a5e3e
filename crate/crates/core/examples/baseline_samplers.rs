//! The reference resamplers on one training set.
//!
//! ```text
//! cargo run --example baseline_samplers
//! ```

use resmoteboost::baselines::{borderline_categories, tomek_link_pairs, SamplerMethod, SamplerSpec};
use resmoteboost::data::{make_gaussian_blobs, partition_by_class};
use resmoteboost::random::RandomSource;

fn main() -> resmoteboost::Result<()> {
    let data = make_gaussian_blobs(300, 60, 2, 1.5, 11)?;
    let part = partition_by_class(&data)?;
    println!(
        "input: {} majority / {} minority",
        part.majority.len(),
        part.minority.len()
    );

    for method in [
        SamplerMethod::Smote,
        SamplerMethod::BorderlineSmote,
        SamplerMethod::Adasyn,
        SamplerMethod::TomekLinks,
        SamplerMethod::RandomUnder,
    ] {
        let spec = SamplerSpec::new(method, 0);
        let out = spec.apply(&part, &mut RandomSource::new(0))?;
        println!(
            "{:<18} {:>4} / {:<4} ({} synthetic, {} majority removed)",
            format!("{method:?}"),
            out.majority.len(),
            out.minority.len(),
            out.synthetics.len(),
            out.majority_removed.len()
        );
    }

    let cats = borderline_categories(&part, 5)?;
    let count = |c| cats.iter().filter(|x| **x == c).count();
    use resmoteboost::baselines::BorderlineCategory::*;
    println!(
        "minority neighbourhoods: {} safe, {} danger, {} noise",
        count(Safe),
        count(Danger),
        count(Noise)
    );
    println!("tomek links: {}", tomek_link_pairs(&part)?.len());
    Ok(())
}
