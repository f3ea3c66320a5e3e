//! Reference resamplers: SMOTE, Borderline-SMOTE (borderline-1), ADASYN,
//! Tomek links and random undersampling.
//!
//! Neighbour searches use Euclidean distance with ties to the lower index.
//! In the combined majority+minority set, majority rows come first.

use serde::{Deserialize, Serialize};

use crate::data::{ClassPartition, Dataset, Label};
use crate::error::{invalid, Error, Result};
use crate::neighbors::k_nearest;
use crate::pruning::{interpolate_with, minority_neighbors, SyntheticSample};
use crate::random::RandomSource;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplerMethod {
    Smote,
    BorderlineSmote,
    Adasyn,
    TomekLinks,
    RandomUnder,
}

/// A configured baseline resampler.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplerSpec {
    pub method: SamplerMethod,
    pub k_neighbors: usize,
    /// Majority-to-minority ratio to resample towards; 1.0 is parity.
    pub target_ratio: f64,
    pub seed: u64,
}

impl SamplerSpec {
    pub fn new(method: SamplerMethod, seed: u64) -> Self {
        Self {
            method,
            k_neighbors: 5,
            target_ratio: 1.0,
            seed,
        }
    }

    /// Resamples `partition`, returning the new majority and minority and
    /// any synthetics created.
    pub fn apply(&self, partition: &ClassPartition, rng: &mut RandomSource) -> Result<Resampled> {
        if self.k_neighbors == 0 {
            return Err(invalid("k_neighbors must be at least 1"));
        }
        if !(self.target_ratio.is_finite() && self.target_ratio >= 1.0) {
            return Err(invalid("target_ratio must be >= 1"));
        }
        let n_maj = partition.majority.len();
        let n_min = partition.minority.len();
        let grow = ((n_maj as f64 / self.target_ratio).ceil() as usize).saturating_sub(n_min);
        let shrink = n_maj.saturating_sub((n_min as f64 * self.target_ratio).round() as usize);
        let oversampled = |out: Oversampled| Resampled {
            majority: partition.majority.clone(),
            minority: out.minority,
            synthetics: out.synthetics,
            majority_removed: Vec::new(),
        };
        match self.method {
            SamplerMethod::Smote => Ok(oversampled(smote(partition, grow, self.k_neighbors, rng)?)),
            SamplerMethod::BorderlineSmote => {
                Ok(oversampled(borderline_smote(partition, grow, self.k_neighbors, rng)?))
            }
            SamplerMethod::Adasyn => Ok(oversampled(adasyn(partition, grow, self.k_neighbors, rng)?)),
            SamplerMethod::TomekLinks => {
                let mut removed: Vec<usize> = tomek_link_pairs(partition)?.into_iter().map(|(a, _)| a).collect();
                removed.sort_unstable();
                Ok(Resampled {
                    majority: drop_indices(&partition.majority, &removed),
                    minority: partition.minority.clone(),
                    synthetics: Vec::new(),
                    majority_removed: removed,
                })
            }
            SamplerMethod::RandomUnder => {
                let removed = random_under_indices(partition, shrink.min(n_maj.saturating_sub(1)), rng)?;
                Ok(Resampled {
                    majority: drop_indices(&partition.majority, &removed),
                    minority: partition.minority.clone(),
                    synthetics: Vec::new(),
                    majority_removed: removed,
                })
            }
        }
    }
}

/// Result of [`SamplerSpec::apply`].
#[derive(Debug, Clone)]
pub struct Resampled {
    pub majority: Dataset,
    pub minority: Dataset,
    pub synthetics: Vec<SyntheticSample>,
    pub majority_removed: Vec<usize>,
}

/// Minority after oversampling: the input rows followed by the synthetics.
#[derive(Debug, Clone)]
pub struct Oversampled {
    pub minority: Dataset,
    pub synthetics: Vec<SyntheticSample>,
}

fn require_minority(partition: &ClassPartition) -> Result<()> {
    if partition.minority.len() < 2 {
        return Err(Error::ClassTooSmall {
            class: "minority",
            found: partition.minority.len(),
            required: 2,
        });
    }
    Ok(())
}

/// Interpolates one synthetic per entry of `seeds`, in order.
fn generate(
    minority: &Dataset,
    seeds: impl IntoIterator<Item = usize>,
    k_neighbors: usize,
    rng: &mut RandomSource,
) -> Result<Oversampled> {
    let mut cache: Vec<Option<Vec<usize>>> = vec![None; minority.len()];
    let mut out = minority.relabeled(Label::Positive);
    let mut synthetics = Vec::new();
    for seed in seeds {
        let nb = cache[seed].get_or_insert_with(|| minority_neighbors(minority, seed, k_neighbors));
        let s = interpolate_with(minority, seed, nb, rng);
        out.push(s.x.clone(), Label::Positive)?;
        synthetics.push(s);
    }
    Ok(Oversampled {
        minority: out,
        synthetics,
    })
}

/// Plain SMOTE: `n_new` synthetics from uniformly chosen seeds.
pub fn smote(
    partition: &ClassPartition,
    n_new: usize,
    k_neighbors: usize,
    rng: &mut RandomSource,
) -> Result<Oversampled> {
    require_minority(partition)?;
    let m = partition.minority.len();
    let seeds: Vec<usize> = (0..n_new).map(|_| rng.index(m)).collect();
    generate(&partition.minority, seeds, k_neighbors, rng)
}

/// Number of majority samples among each minority point's `k` nearest
/// neighbours in the combined set.
fn majority_neighbor_counts(partition: &ClassPartition, k: usize) -> Result<Vec<usize>> {
    let full = partition.union();
    let n_maj = partition.majority.len();
    Ok((0..partition.minority.len())
        .map(|i| {
            let own = n_maj + i;
            k_nearest(full.features(), full.x(own), k, Some(own))
                .into_iter()
                .filter(|&j| j < n_maj)
                .count()
        })
        .collect())
}

/// Neighbourhood class of a minority point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BorderlineCategory {
    /// Fewer than half of the neighbours are majority.
    Safe,
    /// At least half, but not all, of the neighbours are majority.
    Danger,
    /// Every neighbour is majority.
    Noise,
}

pub fn borderline_categories(partition: &ClassPartition, k_neighbors: usize) -> Result<Vec<BorderlineCategory>> {
    let k = k_neighbors.min(partition.majority.len() + partition.minority.len() - 1);
    Ok(majority_neighbor_counts(partition, k)?
        .into_iter()
        .map(|m| {
            if m == k {
                BorderlineCategory::Noise
            } else if 2 * m >= k {
                BorderlineCategory::Danger
            } else {
                BorderlineCategory::Safe
            }
        })
        .collect())
}

/// Borderline-SMOTE: seeds come only from DANGER points (all minority
/// points if there are none); partners are minority neighbours.
pub fn borderline_smote(
    partition: &ClassPartition,
    n_new: usize,
    k_neighbors: usize,
    rng: &mut RandomSource,
) -> Result<Oversampled> {
    require_minority(partition)?;
    let danger: Vec<usize> = borderline_categories(partition, k_neighbors)?
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c == BorderlineCategory::Danger)
        .map(|(i, _)| i)
        .collect();
    let candidates = if danger.is_empty() {
        (0..partition.minority.len()).collect()
    } else {
        danger
    };
    let seeds: Vec<usize> = (0..n_new).map(|_| candidates[rng.index(candidates.len())]).collect();
    generate(&partition.minority, seeds, k_neighbors, rng)
}

/// Synthetics per minority point under ADASYN: proportional to the share of
/// majority neighbours, rounded; uniform when no point has any.
pub fn adasyn_allocation(partition: &ClassPartition, n_new: usize, k_neighbors: usize) -> Result<Vec<usize>> {
    require_minority(partition)?;
    let k = k_neighbors.min(partition.majority.len() + partition.minority.len() - 1);
    let ratios: Vec<f64> = majority_neighbor_counts(partition, k)?
        .into_iter()
        .map(|c| c as f64 / k as f64)
        .collect();
    let total: f64 = ratios.iter().sum();
    let m = ratios.len();
    if total == 0.0 {
        return Ok((0..m).map(|i| n_new / m + usize::from(i < n_new % m)).collect());
    }
    Ok(ratios
        .iter()
        .map(|r| (n_new as f64 * r / total).round() as usize)
        .collect())
}

/// ADASYN: more synthetics for minority points with more majority neighbours.
pub fn adasyn(
    partition: &ClassPartition,
    n_new: usize,
    k_neighbors: usize,
    rng: &mut RandomSource,
) -> Result<Oversampled> {
    let alloc = adasyn_allocation(partition, n_new, k_neighbors)?;
    let seeds = alloc.iter().enumerate().flat_map(|(i, &g)| std::iter::repeat_n(i, g));
    generate(&partition.minority, seeds, k_neighbors, rng)
}

/// `(majority index, minority index)` pairs that are each other's nearest
/// neighbour in the combined set.
pub fn tomek_link_pairs(partition: &ClassPartition) -> Result<Vec<(usize, usize)>> {
    if partition.majority.is_empty() {
        return Err(Error::EmptyClass("majority"));
    }
    if partition.minority.is_empty() {
        return Err(Error::EmptyClass("minority"));
    }
    let full = partition.union();
    let n_maj = partition.majority.len();
    let nn: Vec<Option<usize>> = (0..full.len())
        .map(|i| k_nearest(full.features(), full.x(i), 1, Some(i)).first().copied())
        .collect();
    Ok((0..n_maj)
        .filter_map(|a| match nn[a] {
            Some(b) if b >= n_maj && nn[b] == Some(a) => Some((a, b - n_maj)),
            _ => None,
        })
        .collect())
}

pub(crate) fn drop_indices(data: &Dataset, removed: &[usize]) -> Dataset {
    let mut mask = vec![true; data.len()];
    for &i in removed {
        mask[i] = false;
    }
    let keep: Vec<usize> = (0..data.len()).filter(|&i| mask[i]).collect();
    data.subset(&keep)
}

/// Removes the majority member of every Tomek link in one pass and returns
/// the reduced majority followed by the untouched minority.
pub fn tomek_links(partition: &ClassPartition) -> Result<Dataset> {
    let removed: Vec<usize> = tomek_link_pairs(partition)?.into_iter().map(|(a, _)| a).collect();
    drop_indices(&partition.majority, &removed).concat(&partition.minority)
}

pub(crate) fn random_under_indices(
    partition: &ClassPartition,
    n_remove: usize,
    rng: &mut RandomSource,
) -> Result<Vec<usize>> {
    let n = partition.majority.len();
    if n_remove >= n {
        return Err(invalid(format!("cannot remove {n_remove} of {n} majority samples")));
    }
    let mut removed = rand::seq::index::sample(rng, n, n_remove).into_vec();
    removed.sort_unstable();
    Ok(removed)
}

/// Uniformly removes `n_remove` majority samples; returns the reduced majority.
pub fn random_under(partition: &ClassPartition, n_remove: usize, rng: &mut RandomSource) -> Result<Dataset> {
    let removed = random_under_indices(partition, n_remove, rng)?;
    Ok(drop_indices(&partition.majority, &removed))
}
