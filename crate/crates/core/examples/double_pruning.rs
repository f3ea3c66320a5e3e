//! One double-pruning step, then the same step repeated until the classes
//! are balanced.
//!
//! ```text
//! cargo run --example double_pruning
//! ```

use resmoteboost::boosting::heuristic_tmax;
use resmoteboost::data::{make_gaussian_blobs, partition_by_class};
use resmoteboost::pruning::{double_pruning, PruningConfig};
use resmoteboost::random::RandomSource;

fn main() -> resmoteboost::Result<()> {
    let data = make_gaussian_blobs(366, 193, 2, 8.0, 3)?;
    let part = partition_by_class(&data)?;
    let cfg = PruningConfig::new(90);
    let mut rng = RandomSource::new(1);

    let out = double_pruning(&part.majority, &part.minority, &cfg, &mut rng)?;
    println!(
        "k = 90: majority {} -> {}, minority {} -> {}",
        part.majority.len(),
        out.majority.len(),
        part.minority.len(),
        out.minority.len()
    );
    println!(
        "{} spins, {} candidates accepted, {} dropped by the noise filter",
        out.spins, out.accepted, out.filtered_out
    );
    if let Some(s) = out.synthetics.first() {
        println!(
            "first synthetic: seed {} neighbour {} alpha {:.3}  d(seed) {:.3} <= d(majority) {:.3}  H {:.3}",
            s.seed_index, s.neighbor_index, s.alpha, s.dist_min, s.dist_maj, s.entropy
        );
    }

    // Overlapping classes, carried pools, k = 10.
    let data = make_gaussian_blobs(300, 60, 2, 1.0, 9)?;
    let part = partition_by_class(&data)?;
    let k = 10;
    let rounds = heuristic_tmax(part.majority.len(), part.minority.len(), k)?;
    let cfg = PruningConfig::new(k);
    let (mut maj, mut min) = (part.majority, part.minority);
    for round in 1..=rounds {
        let out = double_pruning(&maj, &min, &cfg, &mut rng)?;
        maj = out.majority;
        min = out.minority;
        println!(
            "round {round:>2}: {} / {}  (+{} synthetics, acceptance {:.2})",
            maj.len(),
            min.len(),
            out.synthetics.len(),
            out.accepted as f64 / out.spins.max(1) as f64
        );
    }
    Ok(())
}
