//! Naive-Bayes posteriors and their entropy: confident majority points
//! score near 0 bits, points on the class boundary near 1 bit.
//!
//! ```text
//! cargo run --example entropy_scoring
//! ```

use resmoteboost::data::{make_gaussian_blobs, partition_by_class};
use resmoteboost::entropy::{fit_gnb, score_entropy, shannon_entropy, VarSmoothing};

fn main() -> resmoteboost::Result<()> {
    for p in [(0.5, 0.5), (0.9, 0.1), (1.0, 0.0)] {
        println!("H{p:?} = {:.4} bits", shannon_entropy(p)?);
    }

    let data = make_gaussian_blobs(200, 40, 2, 2.0, 3)?;
    let model = fit_gnb(&data, None, VarSmoothing::default())?;
    println!("priors {:?}", model.priors);

    let part = partition_by_class(&data)?;
    let mut scores = score_entropy(&model, &part.majority)?;
    scores.sort_by(|a, b| a.entropy.total_cmp(&b.entropy));
    println!("most certain majority samples:");
    for s in scores.iter().take(3) {
        println!(
            "  #{:<3} x = {:?}  H = {:.5}",
            s.sample_index,
            part.majority.x(s.sample_index),
            s.entropy
        );
    }
    println!("least certain majority samples:");
    for s in scores.iter().rev().take(3) {
        println!(
            "  #{:<3} x = {:?}  H = {:.5}",
            s.sample_index,
            part.majority.x(s.sample_index),
            s.entropy
        );
    }
    Ok(())
}
