use super::roulette::build_roulette;
use super::synthetic::{interpolate_with, minority_neighbors, regularization_accept, SyntheticSample};
use super::PruningConfig;
use crate::data::{Dataset, Label};
use crate::entropy::{fit_gnb, score_point, VarSmoothing};
use crate::error::{invalid, Error, Result};
use crate::random::RandomSource;

/// Keeps the `k` candidates with the highest posterior entropy under a
/// naive-Bayes model fit on `pool`. Returned in descending entropy order,
/// ties by lower candidate index, with `entropy` filled in.
pub fn noise_filter(
    candidates: Vec<SyntheticSample>,
    pool: &Dataset,
    k: usize,
    smoothing: VarSmoothing,
) -> Result<Vec<SyntheticSample>> {
    if candidates.is_empty() {
        return Err(invalid("noise filter needs at least one candidate"));
    }
    let model = fit_gnb(pool, None, smoothing)?;
    let mut scored = candidates;
    for (i, c) in scored.iter_mut().enumerate() {
        pool.check_point(&c.x)?;
        c.entropy = score_point(&model, i, &c.x)?.entropy;
    }
    let mut order: Vec<usize> = (0..scored.len()).collect();
    order.sort_by(|&a, &b| scored[b].entropy.total_cmp(&scored[a].entropy).then(a.cmp(&b)));
    order.truncate(k);
    let mut slots: Vec<Option<SyntheticSample>> = scored.into_iter().map(Some).collect();
    Ok(order.into_iter().filter_map(|i| slots[i].take()).collect())
}

/// Outcome of roulette-guided, regularised, noise-filtered oversampling.
#[derive(Debug, Clone)]
pub struct MinorityPruning {
    /// Input minority followed by the retained synthetics.
    pub dataset: Dataset,
    /// Retained synthetics, highest entropy first.
    pub synthetics: Vec<SyntheticSample>,
    pub spins: usize,
    pub accepted: usize,
    pub rejected: usize,
    /// Accepted candidates dropped by the noise filter.
    pub filtered_out: usize,
}

impl MinorityPruning {
    pub fn acceptance_rate(&self) -> f64 {
        if self.spins == 0 {
            0.0
        } else {
            self.accepted as f64 / self.spins as f64
        }
    }
}

/// Grows the minority by up to `cfg.k` synthetics.
///
/// Seeds are drawn from the roulette wheel; each seed yields one SMOTE
/// interpolant which is kept only if it is no farther from its seed than
/// from the nearest majority sample. Drawing stops once
/// `ceil(candidate_multiplier * k)` candidates pass or the spin cap is hit;
/// the noise filter then keeps the `k` highest-entropy ones.
pub fn minority_class_pruning(
    majority: &Dataset,
    minority: &Dataset,
    cfg: &PruningConfig,
    rng: &mut RandomSource,
) -> Result<MinorityPruning> {
    cfg.validate()?;
    if minority.len() < 2 {
        return Err(Error::ClassTooSmall {
            class: "minority",
            found: minority.len(),
            required: 2,
        });
    }
    if majority.is_empty() {
        return Err(Error::EmptyClass("majority"));
    }
    if cfg.k == 0 {
        return Ok(MinorityPruning {
            dataset: minority.clone(),
            synthetics: Vec::new(),
            spins: 0,
            accepted: 0,
            rejected: 0,
            filtered_out: 0,
        });
    }
    let wheel = build_roulette(minority, majority, cfg.epsilon, cfg.fitness_metric)?;
    let target = (cfg.candidate_multiplier * cfg.k as f64).ceil() as usize;
    let spin_cap = cfg.spin_cap();

    let mut neighbor_cache: Vec<Option<Vec<usize>>> = vec![None; minority.len()];
    let mut accepted = Vec::with_capacity(target);
    let mut spins = 0;
    while accepted.len() < target && spins < spin_cap {
        spins += 1;
        let seed = wheel.spin_once(rng);
        let neighbors = neighbor_cache[seed].get_or_insert_with(|| minority_neighbors(minority, seed, cfg.k_neighbors));
        let mut candidate = interpolate_with(minority, seed, neighbors, rng);
        if regularization_accept(&mut candidate, minority, majority) {
            accepted.push(candidate);
        }
    }

    let n_accepted = accepted.len();
    let synthetics = if accepted.is_empty() {
        Vec::new()
    } else {
        let pool = majority
            .relabeled(Label::Negative)
            .concat(&minority.relabeled(Label::Positive))?;
        noise_filter(accepted, &pool, cfg.k, cfg.var_smoothing)?
    };
    let mut dataset = minority.clone();
    for s in &synthetics {
        dataset.push(s.x.clone(), Label::Positive)?;
    }
    Ok(MinorityPruning {
        dataset,
        filtered_out: n_accepted - synthetics.len(),
        synthetics,
        spins,
        accepted: n_accepted,
        rejected: spins - n_accepted,
    })
}
