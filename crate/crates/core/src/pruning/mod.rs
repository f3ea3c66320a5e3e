//! Double pruning: entropy-ranked majority undersampling combined with
//! roulette-guided, regularised and noise-filtered minority oversampling.

mod majority;
mod minority;
mod roulette;
mod synthetic;

pub use majority::{majority_class_pruning, MajorityPruning};
pub use minority::{minority_class_pruning, noise_filter, MinorityPruning};
pub use roulette::{build_roulette, spin, RouletteWheel};
pub use synthetic::{regularization_accept, smote_interpolate, SyntheticSample};

pub(crate) use synthetic::{interpolate_with, minority_neighbors};

use serde::{Deserialize, Serialize};

use crate::data::{Dataset, Label};
use crate::entropy::VarSmoothing;
use crate::error::{invalid, Result};
use crate::neighbors::Metric;
use crate::random::RandomSource;

/// Parameters of one double-pruning invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PruningConfig {
    /// Majority samples removed and synthetic minority samples kept per call.
    pub k: usize,
    pub k_neighbors: usize,
    /// Accepted candidates gathered before noise filtering, as a multiple of `k`.
    pub candidate_multiplier: f64,
    /// Maximum roulette spins per call. `None` means `50 * k`.
    pub spin_cap: Option<usize>,
    /// Lower bound on a seed's summed distance before inversion.
    pub epsilon: f64,
    pub fitness_metric: Metric,
    /// Smoothing of the naive-Bayes model used for entropy scoring.
    pub var_smoothing: VarSmoothing,
}

impl PruningConfig {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            k_neighbors: 5,
            candidate_multiplier: 2.0,
            spin_cap: None,
            epsilon: 1e-12,
            fitness_metric: Metric::Manhattan,
            var_smoothing: VarSmoothing::default(),
        }
    }

    pub fn spin_cap(&self) -> usize {
        self.spin_cap.unwrap_or(50 * self.k)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k_neighbors == 0 {
            return Err(invalid("k_neighbors must be at least 1"));
        }
        if !(self.candidate_multiplier.is_finite() && self.candidate_multiplier >= 1.0) {
            return Err(invalid("candidate_multiplier must be >= 1"));
        }
        if self.spin_cap() < self.k {
            return Err(invalid("spin_cap must be at least k"));
        }
        if self.epsilon.is_nan() || self.epsilon <= 0.0 {
            return Err(invalid("epsilon must be positive"));
        }
        Ok(())
    }
}

/// Everything one double-pruning call produced.
#[derive(Debug, Clone)]
pub struct DoublePruning {
    pub majority: Dataset,
    pub minority: Dataset,
    /// Indices into the input majority that were kept.
    pub majority_retained: Vec<usize>,
    /// Indices into the input majority that were removed.
    pub majority_removed: Vec<usize>,
    /// Synthetics appended to the minority, in append order.
    pub synthetics: Vec<SyntheticSample>,
    pub spins: usize,
    pub accepted: usize,
    pub filtered_out: usize,
}

impl DoublePruning {
    /// Pruned majority followed by grown minority.
    pub fn balanced(&self) -> Result<Dataset> {
        self.majority.concat(&self.minority)
    }
}

/// Removes `cfg.k` low-entropy majority samples and adds up to `cfg.k`
/// filtered synthetic minority samples. Inputs are not modified.
pub fn double_pruning(
    majority: &Dataset,
    minority: &Dataset,
    cfg: &PruningConfig,
    rng: &mut RandomSource,
) -> Result<DoublePruning> {
    cfg.validate()?;
    if cfg.k >= majority.len() {
        return Err(invalid(format!(
            "k = {} must be smaller than the majority size {}",
            cfg.k,
            majority.len()
        )));
    }
    let majority = majority.relabeled(Label::Negative);
    let minority = minority.relabeled(Label::Positive);
    let pool = majority.concat(&minority)?;
    let pruned = majority_class_pruning(&majority, &pool, cfg.k, cfg.var_smoothing)?;
    let grown = minority_class_pruning(&majority, &minority, cfg, rng)?;
    Ok(DoublePruning {
        majority: pruned.retained,
        minority: grown.dataset,
        majority_retained: pruned.retained_indices,
        majority_removed: pruned.removed_indices,
        synthetics: grown.synthetics,
        spins: grown.spins,
        accepted: grown.accepted,
        filtered_out: grown.filtered_out,
    })
}
