//! Weighted AdaBoost with a rebalancing step before every round.
//!
//! Sample weights live on the original training samples only. Each round
//! the current majority/minority pools are rebalanced, a fresh learner is
//! fitted on the balanced pool (synthetics weigh `1/N`), and the error is
//! measured back on the original samples.

mod learners;

pub use learners::{fit_stump, BaseLearner, DecisionStump, GnbClassifier, KnnClassifier, Learner, LearnerKind};

use serde::{Deserialize, Serialize};

use crate::baselines::{drop_indices, random_under_indices, smote};
use crate::data::{partition_by_class, ClassPartition, Dataset, Label};
use crate::error::{invalid, Error, Result};
use crate::pruning::{double_pruning, PruningConfig, SyntheticSample};
use crate::random::RandomSource;

/// Rebalancing applied to the pools before each boosting round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rebalancer {
    None,
    DoublePruning,
    Smote,
    RandomUnder,
}

impl Rebalancer {
    pub fn as_str(self) -> &'static str {
        match self {
            Rebalancer::None => "none",
            Rebalancer::DoublePruning => "double_pruning",
            Rebalancer::Smote => "smote",
            Rebalancer::RandomUnder => "random_under",
        }
    }
}

/// What happens when a round goes wrong.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EarlyStop {
    /// Error used in place of a zero error when computing alpha.
    pub error_floor: f64,
    /// Retry a round whose error reaches 0.5 once, after resetting the
    /// weights to uniform. Without it the first such round stops training.
    pub retry_once: bool,
}

impl Default for EarlyStop {
    fn default() -> Self {
        Self {
            error_floor: 1e-10,
            retry_once: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoostConfig {
    pub t_max: usize,
    /// Samples removed and/or added per round.
    pub k: usize,
    pub learning_rate: f64,
    pub rebalancer: Rebalancer,
    /// Double-pruning parameters; its own `k` is replaced by `self.k`.
    pub pruning: PruningConfig,
    pub early_stop: EarlyStop,
    /// Keep the rebalanced pools from one round to the next. When false
    /// every round starts again from the original training samples.
    pub carry_pools: bool,
}

impl BoostConfig {
    pub fn named(rebalancer: Rebalancer, t_max: usize, k: usize) -> Self {
        Self {
            t_max,
            k,
            learning_rate: 1.0,
            rebalancer,
            pruning: PruningConfig::new(k),
            early_stop: EarlyStop::default(),
            carry_pools: true,
        }
    }

    pub fn re_smoteboost(t_max: usize, k: usize) -> Self {
        Self::named(Rebalancer::DoublePruning, t_max, k)
    }

    pub fn smoteboost(t_max: usize, k: usize) -> Self {
        Self::named(Rebalancer::Smote, t_max, k)
    }

    pub fn rusboost(t_max: usize, k: usize) -> Self {
        Self::named(Rebalancer::RandomUnder, t_max, k)
    }

    pub fn plain(t_max: usize) -> Self {
        Self::named(Rebalancer::None, t_max, 0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.t_max == 0 {
            return Err(invalid("t_max must be at least 1"));
        }
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return Err(invalid("learning_rate must be positive"));
        }
        let floor = self.early_stop.error_floor;
        if !(floor > 0.0 && floor < 0.5) {
            return Err(invalid("error_floor must lie in (0, 0.5)"));
        }
        PruningConfig {
            k: self.k,
            ..self.pruning.clone()
        }
        .validate()
    }
}

/// `max(1, ceil((n_majority - n_minority) / (2k)))`.
pub fn heuristic_tmax(n_majority: usize, n_minority: usize, k: usize) -> Result<usize> {
    if k == 0 {
        return Err(invalid("k must be at least 1"));
    }
    if n_majority < n_minority {
        return Err(invalid("majority must not be smaller than minority"));
    }
    Ok(((n_majority - n_minority).div_ceil(2 * k)).max(1))
}

/// `max(1, round((n_majority - n_minority) / 20))`, aiming at about ten rounds.
pub fn default_k(n_majority: usize, n_minority: usize) -> usize {
    let gap = n_majority.saturating_sub(n_minority) as f64;
    ((gap / 20.0).round() as usize).max(1)
}

/// `learning_rate * 0.5 * ln((1 - e) / e)` with `e` floored at `floor`.
pub fn learner_weight(error: f64, learning_rate: f64, floor: f64) -> f64 {
    let e = error.max(floor);
    learning_rate * 0.5 * ((1.0 - e) / e).ln()
}

/// Multiplies weights by `exp(-alpha * y * h)` and renormalises.
pub fn reweight(weights: &mut [f64], alpha: f64, correct: &[bool]) {
    for (w, &ok) in weights.iter_mut().zip(correct) {
        *w *= if ok { (-alpha).exp() } else { alpha.exp() };
    }
    let total: f64 = weights.iter().sum();
    if total > 0.0 && total.is_finite() {
        for w in weights.iter_mut() {
            *w /= total;
        }
    } else {
        let n = weights.len() as f64;
        weights.iter_mut().for_each(|w| *w = 1.0 / n);
    }
}

/// Maps the model's internal orientation (minority positive) back to the
/// labels of the training data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelCodec {
    pub positive: i8,
    pub negative: i8,
    /// Which training label was the minority class.
    pub minority: Label,
}

impl LabelCodec {
    fn new(partition: &ClassPartition) -> Self {
        Self {
            positive: 1,
            negative: -1,
            minority: partition.to_source_label(Label::Positive),
        }
    }

    pub fn majority(&self) -> Label {
        self.minority.flip()
    }

    fn swapped(&self) -> bool {
        self.minority == Label::Negative
    }
}

/// One boosting round.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationLog {
    pub iteration: usize,
    pub error: f64,
    pub alpha: f64,
    pub majority_size: usize,
    pub minority_size: usize,
    pub majority_removed: usize,
    pub synthetics_added: usize,
    pub spins: usize,
    /// Candidates that passed regularisation before noise filtering.
    pub accepted: usize,
    pub filtered_out: usize,
    /// Rounds discarded before this one was accepted.
    pub retries: usize,
    pub weight_sum: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoostedEnsemble<L> {
    pub alphas: Vec<f64>,
    pub learners: Vec<L>,
    pub label_codec: LabelCodec,
    pub training_log: Vec<IterationLog>,
    pub dimension: usize,
    /// Why training ended before `t_max`, if it did.
    pub stopped_early: Option<String>,
}

impl<L: BaseLearner> BoostedEnsemble<L> {
    /// `sum alpha_t * h_t(x)`, positive towards the training data's positive label.
    pub fn decision_function(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: x.len(),
            });
        }
        let mut margin = 0.0;
        for (l, a) in self.learners.iter().zip(&self.alphas) {
            margin += a * l.predict(x)?.signed();
        }
        Ok(if self.label_codec.swapped() { -margin } else { margin })
    }

    /// Sign of the margin; a zero margin goes to the majority class.
    pub fn predict(&self, x: &[f64]) -> Result<Label> {
        let m = self.decision_function(x)?;
        Ok(if m > 0.0 {
            Label::Positive
        } else if m < 0.0 {
            Label::Negative
        } else {
            self.label_codec.majority()
        })
    }

    pub fn predict_all(&self, data: &Dataset) -> Result<Vec<Label>> {
        data.features().iter().map(|x| self.predict(x)).collect()
    }

    pub fn decision_all(&self, data: &Dataset) -> Result<Vec<f64>> {
        data.features().iter().map(|x| self.decision_function(x)).collect()
    }

    pub fn len(&self) -> usize {
        self.learners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.learners.is_empty()
    }
}

impl<L: Serialize + serde::de::DeserializeOwned> BoostedEnsemble<L> {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Where a pool row came from: an index into the original training
/// samples (majority first) or into the trace's synthetic list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Origin {
    Original(usize),
    Synthetic(usize),
}

#[derive(Debug, Clone)]
struct Pool {
    data: Dataset,
    origin: Vec<Origin>,
}

impl Pool {
    fn keep(&self, retained: &[usize], data: Dataset) -> Pool {
        Pool {
            data,
            origin: retained.iter().map(|&i| self.origin[i]).collect(),
        }
    }

    fn without(&self, removed: &[usize]) -> Pool {
        let kept: Vec<usize> = (0..self.data.len())
            .filter(|i| removed.binary_search(i).is_err())
            .collect();
        Pool {
            data: drop_indices(&self.data, removed),
            origin: kept.iter().map(|&i| self.origin[i]).collect(),
        }
    }
}

/// A fitted ensemble plus the pools used in its last round.
#[derive(Debug, Clone)]
pub struct BoostTrace<L> {
    pub ensemble: BoostedEnsemble<L>,
    /// Majority pool of the last round.
    pub majority: Dataset,
    /// Minority pool of the last round, original rows first.
    pub minority: Dataset,
    /// Synthetics in the last round's minority pool, in append order.
    pub synthetics: Vec<SyntheticSample>,
    /// Final weights on the original samples, majority first.
    pub weights: Vec<f64>,
}

pub fn fit_boosted<L, F>(
    train: &Dataset,
    cfg: &BoostConfig,
    factory: F,
    rng: &mut RandomSource,
) -> Result<BoostedEnsemble<L>>
where
    L: BaseLearner,
    F: FnMut() -> L,
{
    Ok(fit_boosted_traced(train, cfg, factory, rng)?.ensemble)
}

struct Round {
    majority: Pool,
    minority: Pool,
    removed: usize,
    added: usize,
    spins: usize,
    accepted: usize,
    filtered_out: usize,
}

fn rebalance(
    cfg: &BoostConfig,
    majority: &Pool,
    minority: &Pool,
    synthetics: &mut Vec<SyntheticSample>,
    rng: &mut RandomSource,
) -> Result<Round> {
    let unchanged = || Round {
        majority: majority.clone(),
        minority: minority.clone(),
        removed: 0,
        added: 0,
        spins: 0,
        accepted: 0,
        filtered_out: 0,
    };
    let k_under = cfg.k.min(majority.data.len().saturating_sub(1));
    let mut append = |grown: Dataset, new: Vec<SyntheticSample>| {
        let mut origin = minority.origin.clone();
        origin.extend((synthetics.len()..synthetics.len() + new.len()).map(Origin::Synthetic));
        synthetics.extend(new);
        Pool { data: grown, origin }
    };
    match cfg.rebalancer {
        Rebalancer::None => Ok(unchanged()),
        Rebalancer::DoublePruning => {
            if k_under == 0 {
                return Ok(unchanged());
            }
            let pc = PruningConfig {
                k: k_under,
                ..cfg.pruning.clone()
            };
            let out = double_pruning(&majority.data, &minority.data, &pc, rng)?;
            let added = out.synthetics.len();
            Ok(Round {
                majority: majority.keep(&out.majority_retained, out.majority),
                minority: append(out.minority, out.synthetics),
                removed: k_under,
                added,
                spins: out.spins,
                accepted: out.accepted,
                filtered_out: out.filtered_out,
            })
        }
        Rebalancer::Smote => {
            if cfg.k == 0 {
                return Ok(unchanged());
            }
            let part = ClassPartition::from_parts(majority.data.clone(), minority.data.clone())?;
            let out = smote(&part, cfg.k, cfg.pruning.k_neighbors, rng)?;
            let added = out.synthetics.len();
            Ok(Round {
                majority: majority.clone(),
                minority: append(out.minority, out.synthetics),
                removed: 0,
                added,
                spins: 0,
                accepted: added,
                filtered_out: 0,
            })
        }
        Rebalancer::RandomUnder => {
            if k_under == 0 {
                return Ok(unchanged());
            }
            let part = ClassPartition::from_parts(majority.data.clone(), minority.data.clone())?;
            let removed = random_under_indices(&part, k_under, rng)?;
            Ok(Round {
                majority: majority.without(&removed),
                minority: minority.clone(),
                removed: removed.len(),
                added: 0,
                spins: 0,
                accepted: 0,
                filtered_out: 0,
            })
        }
    }
}

/// [`fit_boosted`] that also returns the final pools and weights.
pub fn fit_boosted_traced<L, F>(
    train: &Dataset,
    cfg: &BoostConfig,
    mut factory: F,
    rng: &mut RandomSource,
) -> Result<BoostTrace<L>>
where
    L: BaseLearner,
    F: FnMut() -> L,
{
    cfg.validate()?;
    let partition = partition_by_class(train)?;
    let originals = partition.union();
    let n = originals.len();
    let n_maj = partition.majority.len();
    let start_majority = Pool {
        data: partition.majority.clone(),
        origin: (0..n_maj).map(Origin::Original).collect(),
    };
    let start_minority = Pool {
        data: partition.minority.clone(),
        origin: (n_maj..n).map(Origin::Original).collect(),
    };

    let uniform = 1.0 / n as f64;
    let mut weights = vec![uniform; n];
    let mut majority = start_majority.clone();
    let mut minority = start_minority.clone();
    let mut synthetics: Vec<SyntheticSample> = Vec::new();
    let mut ensemble = BoostedEnsemble {
        alphas: Vec::new(),
        learners: Vec::new(),
        label_codec: LabelCodec::new(&partition),
        training_log: Vec::new(),
        dimension: train.dimension(),
        stopped_early: None,
    };

    let mut last_round: Option<Round> = None;
    for t in 0..cfg.t_max {
        let (base_maj, base_min) = if cfg.carry_pools {
            (&majority, &minority)
        } else {
            synthetics.clear();
            (&start_majority, &start_minority)
        };
        let round = rebalance(cfg, base_maj, base_min, &mut synthetics, rng)?;
        let balanced = round.majority.data.concat(&round.minority.data)?;
        let origins: Vec<Origin> = round
            .majority
            .origin
            .iter()
            .chain(&round.minority.origin)
            .copied()
            .collect();

        let mut retries = 0;
        let accepted = loop {
            let mut fit_w: Vec<f64> = origins
                .iter()
                .map(|o| match o {
                    Origin::Original(i) => weights[*i],
                    Origin::Synthetic(_) => uniform,
                })
                .collect();
            let total: f64 = fit_w.iter().sum();
            fit_w.iter_mut().for_each(|w| *w /= total);

            let mut learner = factory();
            learner.fit(&balanced, &fit_w)?;
            let mut correct = Vec::with_capacity(n);
            for (x, y) in originals.iter() {
                correct.push(learner.predict(x)? == y);
            }
            let error: f64 = weights
                .iter()
                .zip(&correct)
                .filter(|(_, ok)| !**ok)
                .map(|(w, _)| w)
                .sum();
            if error < 0.5 {
                break Some((learner, error, correct));
            }
            retries += 1;
            weights.iter_mut().for_each(|w| *w = uniform);
            if !cfg.early_stop.retry_once || retries > 1 {
                break None;
            }
        };

        let Some((learner, error, correct)) = accepted else {
            ensemble.stopped_early = Some(format!("round {} error reached 0.5", t + 1));
            break;
        };
        let alpha = learner_weight(error, cfg.learning_rate, cfg.early_stop.error_floor);
        reweight(&mut weights, alpha, &correct);
        ensemble.training_log.push(IterationLog {
            iteration: t + 1,
            error,
            alpha,
            majority_size: round.majority.data.len(),
            minority_size: round.minority.data.len(),
            majority_removed: round.removed,
            synthetics_added: round.added,
            spins: round.spins,
            accepted: round.accepted,
            filtered_out: round.filtered_out,
            retries,
            weight_sum: weights.iter().sum(),
        });
        ensemble.learners.push(learner);
        ensemble.alphas.push(alpha);
        if cfg.carry_pools {
            majority = round.majority.clone();
            minority = round.minority.clone();
        }
        last_round = Some(round);
    }

    if ensemble.learners.is_empty() {
        return Err(Error::NoLearner);
    }
    let final_round = last_round.expect("at least one accepted round");
    let kept: Vec<SyntheticSample> = final_round
        .minority
        .origin
        .iter()
        .filter_map(|o| match o {
            Origin::Synthetic(i) => Some(synthetics[*i].clone()),
            Origin::Original(_) => None,
        })
        .collect();
    Ok(BoostTrace {
        ensemble,
        majority: final_round.majority.data,
        minority: final_round.minority.data,
        synthetics: kept,
        weights,
    })
}
