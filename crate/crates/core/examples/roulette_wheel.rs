//! Distance-weighted seed selection: minority points nearer the majority
//! class own a larger slice of the wheel.
//!
//! ```text
//! cargo run --example roulette_wheel
//! ```

use resmoteboost::data::{Dataset, Label};
use resmoteboost::neighbors::Metric;
use resmoteboost::pruning::{build_roulette, spin};
use resmoteboost::random::RandomSource;

fn main() -> resmoteboost::Result<()> {
    let majority = Dataset::new(1, vec![vec![0.0], vec![1.0], vec![2.0]], vec![Label::Negative; 3])?;
    let minority = Dataset::new(
        1,
        vec![vec![3.0], vec![4.0], vec![6.0], vec![10.0]],
        vec![Label::Positive; 4],
    )?;
    let wheel = build_roulette(&minority, &majority, 1e-12, Metric::Manhattan)?;
    println!(
        "{:>5} {:>10} {:>10} {:>10} {:>10}",
        "seed", "distance", "fitness", "p", "cumulative"
    );
    for i in 0..wheel.len() {
        println!(
            "{:>5} {:>10.3} {:>10.5} {:>10.4} {:>10.4}",
            wheel.seed_indices[i], wheel.distances[i], wheel.fitness[i], wheel.probabilities[i], wheel.cumulative[i]
        );
    }

    let draws = spin(&wheel, 10_000, &mut RandomSource::new(5));
    let mut counts = vec![0usize; wheel.len()];
    for d in draws {
        counts[d] += 1;
    }
    println!("observed frequencies over 10000 spins:");
    for (i, c) in counts.iter().enumerate() {
        println!(
            "  seed {i}: {:.4} (expected {:.4})",
            *c as f64 / 10_000.0,
            wheel.probabilities[i]
        );
    }
    Ok(())
}
