use rand_distr::{Distribution, StandardNormal};

use super::{Dataset, Label};
use crate::error::{invalid, Result};
use crate::random::RandomSource;

/// Two isotropic unit-variance Gaussian classes: majority (negative) centred
/// at the origin, minority (positive) at `(separation, 0, ..., 0)`.
/// Majority rows come first.
pub fn make_gaussian_blobs(
    n_majority: usize,
    n_minority: usize,
    dimension: usize,
    separation: f64,
    seed: u64,
) -> Result<Dataset> {
    if n_majority == 0 || n_minority == 0 {
        return Err(invalid("blob class counts must be at least 1"));
    }
    if dimension == 0 {
        return Err(invalid("blob dimension must be at least 1"));
    }
    if !(separation.is_finite() && separation >= 0.0) {
        return Err(invalid(format!("separation {separation} must be finite and >= 0")));
    }
    let mut rng = RandomSource::new(seed);
    let mut features = Vec::with_capacity(n_majority + n_minority);
    let mut labels = Vec::with_capacity(n_majority + n_minority);
    for (count, shift, label) in [
        (n_majority, 0.0, Label::Negative),
        (n_minority, separation, Label::Positive),
    ] {
        for _ in 0..count {
            let mut x: Vec<f64> = (0..dimension).map(|_| StandardNormal.sample(&mut rng)).collect();
            x[0] += shift;
            features.push(x);
            labels.push(label);
        }
    }
    Ok(Dataset::new(dimension, features, labels)?.with_source_tag(format!(
        "blobs(n_maj={n_majority},n_min={n_minority},d={dimension},sep={separation},seed={seed})"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_determinism() {
        let a = make_gaussian_blobs(50, 10, 3, 2.0, 5).unwrap();
        let b = make_gaussian_blobs(50, 10, 3, 2.0, 5).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.count(Label::Negative), 50);
        assert_eq!(a.count(Label::Positive), 10);
        assert_eq!(a.dimension(), 3);
        let c = make_gaussian_blobs(50, 10, 3, 2.0, 6).unwrap();
        assert_ne!(a.features(), c.features());
    }

    #[test]
    fn rejects_empty_class() {
        assert!(make_gaussian_blobs(10, 0, 2, 1.0, 0).is_err());
        assert!(make_gaussian_blobs(10, 1, 0, 1.0, 0).is_err());
        assert!(make_gaussian_blobs(10, 1, 1, -1.0, 0).is_err());
    }

    #[test]
    fn minority_is_shifted() {
        let d = make_gaussian_blobs(2000, 2000, 2, 4.0, 11).unwrap();
        let mean = |label: Label, j: usize| {
            let v: Vec<f64> = d.iter().filter(|(_, y)| *y == label).map(|(x, _)| x[j]).collect();
            v.iter().sum::<f64>() / v.len() as f64
        };
        assert!(mean(Label::Negative, 0).abs() < 0.1);
        assert!((mean(Label::Positive, 0) - 4.0).abs() < 0.1);
        assert!(mean(Label::Positive, 1).abs() < 0.1);
    }
}
