use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::{Dataset, Label};
use crate::error::{invalid, Error, Result};
use crate::random::RandomSource;

/// Train/test split parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub train_fraction: f64,
    pub stratified: bool,
    pub seed: u64,
}

impl Default for SplitSpec {
    fn default() -> Self {
        Self {
            train_fraction: 0.8,
            stratified: true,
            seed: 0,
        }
    }
}

impl SplitSpec {
    pub fn rng(&self) -> RandomSource {
        RandomSource::new(self.seed)
    }
}

/// Row indices of a split into the source dataset, each sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitIndices {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

impl SplitIndices {
    pub fn apply(&self, data: &Dataset) -> (Dataset, Dataset) {
        (data.subset(&self.train), data.subset(&self.test))
    }
}

fn round_half_up(v: f64) -> usize {
    (v + 0.5).floor() as usize
}

fn class_indices(data: &Dataset, label: Label) -> Vec<usize> {
    (0..data.len()).filter(|&i| data.y(i) == label).collect()
}

fn check_classes(data: &Dataset, required: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    let pos = class_indices(data, Label::Positive);
    let neg = class_indices(data, Label::Negative);
    for (class, idx) in [("positive", &pos), ("negative", &neg)] {
        if idx.len() < required {
            return Err(Error::ClassTooSmall {
                class,
                found: idx.len(),
                required,
            });
        }
    }
    Ok((pos, neg))
}

/// Chooses train and test rows. Stratified splits take
/// `round(train_fraction * class size)` (half rounds up) from every class.
pub fn split_indices(data: &Dataset, spec: &SplitSpec, rng: &mut RandomSource) -> Result<SplitIndices> {
    if !(spec.train_fraction > 0.0 && spec.train_fraction < 1.0) {
        return Err(invalid(format!(
            "train fraction {} outside (0, 1)",
            spec.train_fraction
        )));
    }
    let (pos, neg) = check_classes(data, 2)?;
    let mut train = Vec::new();
    let mut test = Vec::new();
    if spec.stratified {
        for mut idx in [neg, pos] {
            let n_train = round_half_up(spec.train_fraction * idx.len() as f64).min(idx.len());
            idx.shuffle(rng);
            train.extend_from_slice(&idx[..n_train]);
            test.extend_from_slice(&idx[n_train..]);
        }
    } else {
        let mut idx: Vec<usize> = (0..data.len()).collect();
        let n_train = round_half_up(spec.train_fraction * idx.len() as f64).min(idx.len());
        idx.shuffle(rng);
        train.extend_from_slice(&idx[..n_train]);
        test.extend_from_slice(&idx[n_train..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok(SplitIndices { train, test })
}

/// Stratified train/test split. Rows keep their original relative order.
pub fn stratified_split(data: &Dataset, spec: &SplitSpec, rng: &mut RandomSource) -> Result<(Dataset, Dataset)> {
    Ok(split_indices(data, spec, rng)?.apply(data))
}

/// Stratified k-fold: every class is shuffled and dealt round-robin into
/// `folds` test folds. Fold `i` trains on the remaining folds.
pub fn stratified_kfold(data: &Dataset, folds: usize, rng: &mut RandomSource) -> Result<Vec<SplitIndices>> {
    if folds < 2 {
        return Err(invalid("k-fold needs at least 2 folds"));
    }
    let (pos, neg) = check_classes(data, folds)?;
    let mut fold_of = vec![0usize; data.len()];
    let mut offset = 0;
    for mut idx in [neg, pos] {
        idx.shuffle(rng);
        for (j, &i) in idx.iter().enumerate() {
            fold_of[i] = (offset + j) % folds;
        }
        offset += idx.len();
    }
    Ok((0..folds)
        .map(|f| {
            let (test, train): (Vec<usize>, Vec<usize>) = (0..data.len()).partition(|&i| fold_of[i] == f);
            SplitIndices { train, test }
        })
        .collect())
}
