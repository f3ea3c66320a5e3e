use serde::{Deserialize, Serialize};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::neighbors::Metric;
use crate::random::RandomSource;

/// Fitness-proportionate selection over minority samples.
///
/// A seed's fitness is the reciprocal of its summed distance to every
/// majority sample, so minority points close to the majority class are
/// drawn more often.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouletteWheel {
    /// Minority indices, in minority order.
    pub seed_indices: Vec<usize>,
    /// Summed distance from each seed to all majority samples.
    pub distances: Vec<f64>,
    pub fitness: Vec<f64>,
    pub probabilities: Vec<f64>,
    /// Running sum of `probabilities`.
    pub cumulative: Vec<f64>,
}

/// Builds the wheel. Distances below `epsilon` are raised to `epsilon`
/// before taking the reciprocal.
pub fn build_roulette(minority: &Dataset, majority: &Dataset, epsilon: f64, metric: Metric) -> Result<RouletteWheel> {
    if minority.is_empty() {
        return Err(Error::EmptyClass("minority"));
    }
    if majority.is_empty() {
        return Err(Error::EmptyClass("majority"));
    }
    if minority.dimension() != majority.dimension() {
        return Err(Error::DimensionMismatch {
            expected: majority.dimension(),
            found: minority.dimension(),
        });
    }
    let distances: Vec<f64> = minority
        .features()
        .iter()
        .map(|x| majority.features().iter().map(|m| metric.distance(x, m)).sum())
        .collect();
    let fitness: Vec<f64> = distances.iter().map(|&d| 1.0 / d.max(epsilon)).collect();
    Ok(RouletteWheel::from_fitness(
        (0..minority.len()).collect(),
        distances,
        fitness,
    ))
}

impl RouletteWheel {
    /// Normalises `fitness` into selection and cumulative probabilities.
    pub fn from_fitness(seed_indices: Vec<usize>, distances: Vec<f64>, fitness: Vec<f64>) -> Self {
        let total: f64 = fitness.iter().sum();
        let probabilities: Vec<f64> = fitness.iter().map(|f| f / total).collect();
        let cumulative = probabilities
            .iter()
            .scan(0.0, |acc, p| {
                *acc += p;
                Some(*acc)
            })
            .collect();
        Self {
            seed_indices,
            distances,
            fitness,
            probabilities,
            cumulative,
        }
    }

    pub fn len(&self) -> usize {
        self.seed_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seed_indices.is_empty()
    }

    /// Seed whose bucket `[q_{i-1}, q_i)` contains `r`. Draws at or above
    /// the final cumulative value (rounding) land in the last non-empty
    /// bucket.
    pub fn select(&self, r: f64) -> usize {
        let pos = self.cumulative.partition_point(|&q| q <= r);
        let pos = if pos < self.len() {
            pos
        } else {
            self.probabilities
                .iter()
                .rposition(|&p| p > 0.0)
                .unwrap_or(self.len() - 1)
        };
        self.seed_indices[pos]
    }

    /// One uniform draw.
    pub fn spin_once(&self, rng: &mut RandomSource) -> usize {
        self.select(rng.uniform())
    }
}

/// `n_draws` independent spins, repeats allowed.
pub fn spin(wheel: &RouletteWheel, n_draws: usize, rng: &mut RandomSource) -> Vec<usize> {
    (0..n_draws).map(|_| wheel.spin_once(rng)).collect()
}
