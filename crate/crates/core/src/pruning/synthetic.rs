use serde::{Deserialize, Serialize};

use crate::data::Dataset;
use crate::error::{invalid, Error, Result};
use crate::neighbors::{euclidean, k_nearest, nearest_distance};
use crate::random::RandomSource;

/// A generated minority point and where it came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSample {
    pub x: Vec<f64>,
    /// Minority index of the seed.
    pub seed_index: usize,
    /// Minority index of the interpolation partner.
    pub neighbor_index: usize,
    /// Interpolation coefficient in `[0, 1)`.
    pub alpha: f64,
    /// Euclidean distance to the seed. NaN until regularised.
    pub dist_min: f64,
    /// Euclidean distance to the nearest majority sample. NaN until regularised.
    pub dist_maj: f64,
    /// Posterior entropy in bits. NaN until noise filtered.
    pub entropy: f64,
}

impl SyntheticSample {
    /// `seed + alpha * (neighbor - seed)`.
    pub fn interpolate(seed: &[f64], neighbor: &[f64], seed_index: usize, neighbor_index: usize, alpha: f64) -> Self {
        let x = seed.iter().zip(neighbor).map(|(s, n)| s + alpha * (n - s)).collect();
        Self {
            x,
            seed_index,
            neighbor_index,
            alpha,
            dist_min: f64::NAN,
            dist_maj: f64::NAN,
            entropy: f64::NAN,
        }
    }
}

/// Draws the interpolation coefficient, then a partner uniformly from
/// `neighbors`, and interpolates.
pub(crate) fn interpolate_with(
    minority: &Dataset,
    seed_index: usize,
    neighbors: &[usize],
    rng: &mut RandomSource,
) -> SyntheticSample {
    let alpha = rng.uniform();
    let j = neighbors[rng.index(neighbors.len())];
    SyntheticSample::interpolate(minority.x(seed_index), minority.x(j), seed_index, j, alpha)
}

/// Nearest minority neighbours of `seed_index`, excluding itself.
pub(crate) fn minority_neighbors(minority: &Dataset, seed_index: usize, k_neighbors: usize) -> Vec<usize> {
    k_nearest(
        minority.features(),
        minority.x(seed_index),
        k_neighbors.min(minority.len() - 1),
        Some(seed_index),
    )
}

/// One SMOTE interpolant from the seed at `seed_index` towards one of its
/// `k_neighbors` nearest minority neighbours.
pub fn smote_interpolate(
    minority: &Dataset,
    seed_index: usize,
    k_neighbors: usize,
    rng: &mut RandomSource,
) -> Result<SyntheticSample> {
    if minority.len() < 2 {
        return Err(Error::ClassTooSmall {
            class: "minority",
            found: minority.len(),
            required: 2,
        });
    }
    if k_neighbors == 0 {
        return Err(invalid("k_neighbors must be at least 1"));
    }
    if seed_index >= minority.len() {
        return Err(invalid(format!("seed index {seed_index} out of range")));
    }
    let neighbors = minority_neighbors(minority, seed_index, k_neighbors);
    Ok(interpolate_with(minority, seed_index, &neighbors, rng))
}

/// Fills `dist_min` (to the candidate's own seed) and `dist_maj` (to the
/// nearest majority sample) and accepts when `dist_min <= dist_maj`.
pub fn regularization_accept(candidate: &mut SyntheticSample, minority: &Dataset, majority: &Dataset) -> bool {
    candidate.dist_min = euclidean(&candidate.x, minority.x(candidate.seed_index));
    candidate.dist_maj = nearest_distance(majority.features(), &candidate.x);
    candidate.dist_min <= candidate.dist_maj
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{make_gaussian_blobs, partition_by_class, Label};

    fn pts(rows: &[&[f64]], label: Label) -> Dataset {
        Dataset::new(
            rows[0].len(),
            rows.iter().map(|r| r.to_vec()).collect(),
            vec![label; rows.len()],
        )
        .unwrap()
    }

    #[test]
    fn midpoint_and_endpoint() {
        let s = SyntheticSample::interpolate(&[0.0, 0.0], &[2.0, 4.0], 0, 1, 0.5);
        assert_eq!(s.x, vec![1.0, 2.0]);
        let s = SyntheticSample::interpolate(&[0.3, -1.0], &[2.0, 4.0], 0, 1, 0.0);
        assert_eq!(s.x, vec![0.3, -1.0]);
    }

    #[test]
    fn needs_two_minority_points() {
        let min = pts(&[&[0.0]], Label::Positive);
        assert!(smote_interpolate(&min, 0, 5, &mut RandomSource::new(0)).is_err());
    }

    #[test]
    fn collinearity_over_many_draws() {
        let data = make_gaussian_blobs(10, 40, 3, 1.0, 2).unwrap();
        let min = partition_by_class(&data).unwrap().minority;
        let mut rng = RandomSource::new(8);
        for t in 0..1000 {
            let seed = t % min.len();
            let s = smote_interpolate(&min, seed, 5, &mut rng).unwrap();
            assert_eq!(s.seed_index, seed);
            assert_ne!(s.neighbor_index, seed);
            assert!((0.0..1.0).contains(&s.alpha));
            let a = min.x(s.seed_index);
            let b = min.x(s.neighbor_index);
            let residual = euclidean(&s.x, a) + euclidean(&s.x, b) - euclidean(a, b);
            assert!(residual.abs() <= 1e-9);
            let nn = minority_neighbors(&min, seed, 5);
            assert!(nn.contains(&s.neighbor_index));
        }
    }

    #[test]
    fn regularization_cases() {
        let maj = pts(&[&[3.0, 0.0], &[10.0, 10.0]], Label::Negative);
        let min = pts(&[&[1.0, 0.0], &[4.0, 0.0]], Label::Positive);
        let mut c = SyntheticSample::interpolate(&[0.0, 0.0], &[0.0, 0.0], 0, 1, 0.0);
        assert!(regularization_accept(&mut c, &min, &maj));
        assert_eq!((c.dist_min, c.dist_maj), (1.0, 3.0));

        let maj = pts(&[&[1.0, 0.0]], Label::Negative);
        let mut c = SyntheticSample::interpolate(&[0.0, 0.0], &[0.0, 0.0], 1, 0, 0.0);
        assert!(!regularization_accept(&mut c, &min, &maj));
        assert_eq!((c.dist_min, c.dist_maj), (4.0, 1.0));

        let mut c = SyntheticSample::interpolate(min.x(1), min.x(0), 1, 0, 0.0);
        assert!(regularization_accept(&mut c, &min, &maj));
        assert_eq!(c.dist_min, 0.0);
    }
}
