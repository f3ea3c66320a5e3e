//! Gaussian naive-Bayes posteriors and two-class Shannon entropy.
//!
//! The posterior is evaluated in log space: per-class log-joints are
//! shifted by their maximum before exponentiation, so points far in a tail
//! produce a degenerate posterior instead of `0/0`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::data::{Dataset, Label};
use crate::error::{Error, Result};

/// How much variance is added to every per-class, per-feature variance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum VarSmoothing {
    /// Fraction of the largest per-feature variance of the fitting data.
    /// Falls back to the fraction itself when every feature is constant.
    Relative(f64),
    /// Fixed amount.
    Absolute(f64),
}

impl Default for VarSmoothing {
    fn default() -> Self {
        VarSmoothing::Relative(1e-9)
    }
}

/// Per-class Gaussian parameters. Index 0 is negative, 1 is positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianNbModel {
    pub priors: [f64; 2],
    pub means: [Vec<f64>; 2],
    pub variances: [Vec<f64>; 2],
    pub smoothing: f64,
}

fn class_slot(label: Label) -> usize {
    match label {
        Label::Negative => 0,
        Label::Positive => 1,
    }
}

/// Fits class priors and population moments, optionally weighted.
pub fn fit_gnb(data: &Dataset, weights: Option<&[f64]>, smoothing: VarSmoothing) -> Result<GaussianNbModel> {
    data.require_both_classes()?;
    let n = data.len();
    let d = data.dimension();
    if let Some(w) = weights {
        if w.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: w.len(),
            });
        }
        if w.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(crate::error::invalid("sample weights must be finite and non-negative"));
        }
    }
    let weight = |i: usize| weights.map_or(1.0, |w| w[i]);

    let mut totals = [0.0f64; 2];
    let mut sums = [vec![0.0; d], vec![0.0; d]];
    for (i, (x, y)) in data.iter().enumerate() {
        let c = class_slot(y);
        let w = weight(i);
        totals[c] += w;
        for (s, v) in sums[c].iter_mut().zip(x) {
            *s += w * v;
        }
    }
    for (c, name) in [(0, "negative (zero total weight)"), (1, "positive (zero total weight)")] {
        if totals[c].is_nan() || totals[c] <= 0.0 {
            return Err(Error::EmptyClass(name));
        }
    }
    let means = [
        sums[0].iter().map(|s| s / totals[0]).collect::<Vec<_>>(),
        sums[1].iter().map(|s| s / totals[1]).collect::<Vec<_>>(),
    ];
    let mut variances = [vec![0.0; d], vec![0.0; d]];
    for (i, (x, y)) in data.iter().enumerate() {
        let c = class_slot(y);
        let w = weight(i);
        for j in 0..d {
            let dev = x[j] - means[c][j];
            variances[c][j] += w * dev * dev;
        }
    }
    for c in 0..2 {
        variances[c].iter_mut().for_each(|v| *v /= totals[c]);
    }

    let epsilon = match smoothing {
        VarSmoothing::Absolute(e) => e,
        VarSmoothing::Relative(frac) => {
            let widest = max_feature_variance(data);
            if widest > 0.0 {
                frac * widest
            } else {
                frac
            }
        }
    };
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(crate::error::invalid(format!(
            "variance smoothing must be positive, got {epsilon}"
        )));
    }
    for class in variances.iter_mut() {
        class.iter_mut().for_each(|v| *v += epsilon);
    }
    let total = totals[0] + totals[1];
    Ok(GaussianNbModel {
        priors: [totals[0] / total, totals[1] / total],
        means,
        variances,
        smoothing: epsilon,
    })
}

/// Largest unweighted population variance over all features.
fn max_feature_variance(data: &Dataset) -> f64 {
    let n = data.len() as f64;
    (0..data.dimension())
        .map(|j| {
            let mean = data.iter().map(|(x, _)| x[j]).sum::<f64>() / n;
            data.iter().map(|(x, _)| (x[j] - mean).powi(2)).sum::<f64>() / n
        })
        .fold(0.0, f64::max)
}

impl GaussianNbModel {
    pub fn dimension(&self) -> usize {
        self.means[0].len()
    }

    /// Unnormalised log P(y) + Σ log N(x_j; μ_yj, σ²_yj) for both classes.
    pub fn log_joint(&self, x: &[f64]) -> Result<[f64; 2]> {
        if x.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                found: x.len(),
            });
        }
        let mut out = [0.0; 2];
        for (c, slot) in out.iter_mut().enumerate() {
            let mut acc = self.priors[c].ln();
            for ((v, mu), var) in x.iter().zip(&self.means[c]).zip(&self.variances[c]) {
                acc -= 0.5 * (2.0 * PI * var).ln() + (v - mu).powi(2) / (2.0 * var);
            }
            *slot = acc;
        }
        Ok(out)
    }

    /// `(P(neg|x), P(pos|x))`.
    pub fn posterior(&self, x: &[f64]) -> Result<(f64, f64)> {
        let lj = self.log_joint(x)?;
        Ok(normalize_log(lj))
    }

    /// `ln P(pos|x) - ln P(neg|x)`.
    pub fn log_odds(&self, x: &[f64]) -> Result<f64> {
        let [neg, pos] = self.log_joint(x)?;
        Ok(pos - neg)
    }
}

fn normalize_log([a, b]: [f64; 2]) -> (f64, f64) {
    let m = a.max(b);
    if !m.is_finite() {
        return if a == b || (a.is_nan() && b.is_nan()) {
            (0.5, 0.5)
        } else if a > b {
            (1.0, 0.0)
        } else {
            (0.0, 1.0)
        };
    }
    let ea = (a - m).exp();
    let eb = (b - m).exp();
    let z = ea + eb;
    (ea / z, eb / z)
}

/// Posterior of `x` under `model`.
pub fn posterior(model: &GaussianNbModel, x: &[f64]) -> Result<(f64, f64)> {
    model.posterior(x)
}

/// Base-2 entropy of a two-class posterior, with `0 log 0 = 0`.
pub fn shannon_entropy(p: (f64, f64)) -> Result<f64> {
    let (a, b) = p;
    let in_range = |v: f64| (0.0..=1.0).contains(&v);
    if !in_range(a) || !in_range(b) || ((a + b) - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidProbability(format!("({a}, {b})")));
    }
    let term = |v: f64| if v > 0.0 { -v * v.log2() } else { 0.0 };
    Ok((term(a) + term(b)).clamp(0.0, 1.0))
}

/// Entropy of one scored sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyScore {
    pub sample_index: usize,
    /// `(P(neg|x), P(pos|x))`.
    pub posterior: (f64, f64),
    pub entropy: f64,
}

/// Scores every sample of `data`, index-aligned.
pub fn score_entropy(model: &GaussianNbModel, data: &Dataset) -> Result<Vec<EntropyScore>> {
    if data.dimension() != model.dimension() {
        return Err(Error::DimensionMismatch {
            expected: model.dimension(),
            found: data.dimension(),
        });
    }
    data.features()
        .iter()
        .enumerate()
        .map(|(i, x)| score_point(model, i, x))
        .collect()
}

pub(crate) fn score_point(model: &GaussianNbModel, index: usize, x: &[f64]) -> Result<EntropyScore> {
    let posterior = model.posterior(x)?;
    Ok(EntropyScore {
        sample_index: index,
        posterior,
        entropy: shannon_entropy(posterior)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// One feature, neg ~ N(0, 1), pos ~ N(2, 1), equal priors.
    fn symmetric_model() -> GaussianNbModel {
        GaussianNbModel {
            priors: [0.5, 0.5],
            means: [vec![0.0], vec![2.0]],
            variances: [vec![1.0], vec![1.0]],
            smoothing: 1e-12,
        }
    }

    fn gaussian_pdf(x: f64, mu: f64, var: f64) -> f64 {
        (-(x - mu).powi(2) / (2.0 * var)).exp() / (2.0 * PI * var).sqrt()
    }

    #[test]
    fn two_point_moments() {
        let d = Dataset::new(
            1,
            vec![vec![-1.0], vec![1.0], vec![5.0]],
            vec![Label::Negative, Label::Negative, Label::Positive],
        )
        .unwrap();
        let m = fit_gnb(&d, None, VarSmoothing::Absolute(0.25)).unwrap();
        assert_eq!(m.means[0], vec![0.0]);
        assert!((m.variances[0][0] - 1.25).abs() < 1e-15);
        assert!((m.variances[1][0] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn priors_from_counts() {
        let d = Dataset::new(
            1,
            vec![vec![0.0], vec![1.0], vec![2.0], vec![9.0]],
            vec![Label::Negative, Label::Negative, Label::Negative, Label::Positive],
        )
        .unwrap();
        let m = fit_gnb(&d, None, VarSmoothing::default()).unwrap();
        assert_eq!(m.priors, [0.75, 0.25]);
        assert!((m.priors.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_feature_gets_smoothing_floor() {
        let d = Dataset::new(
            2,
            vec![vec![1.0, 0.0], vec![1.0, 4.0], vec![3.0, 1.0], vec![3.0, 2.0]],
            vec![Label::Negative, Label::Negative, Label::Positive, Label::Positive],
        )
        .unwrap();
        let m = fit_gnb(&d, None, VarSmoothing::default()).unwrap();
        assert_eq!(m.variances[0][0], m.smoothing);
        assert!(m.smoothing > 0.0);
        let p = m.posterior(&[2.0, 1.0]).unwrap();
        assert!(p.0.is_finite() && p.1.is_finite());
    }

    #[test]
    fn posterior_closed_forms() {
        let m = symmetric_model();
        let (a, b) = m.posterior(&[1.0]).unwrap();
        assert!((a - 0.5).abs() < 1e-9 && (b - 0.5).abs() < 1e-9);

        // Oracle: evaluate both densities directly and normalise.
        let dn = gaussian_pdf(0.0, 0.0, 1.0);
        let dp = gaussian_pdf(0.0, 2.0, 1.0);
        let expected = dn / (dn + dp);
        let (a, _) = m.posterior(&[0.0]).unwrap();
        assert!((a - expected).abs() < 1e-12);
        assert!((a - 1.0 / (1.0 + (-2.0f64).exp())).abs() < 1e-12);
        assert!((a - 0.8808).abs() < 1e-4);

        let (a, b) = m.posterior(&[-100.0]).unwrap();
        assert!((a - 1.0).abs() < 1e-12 && b < 1e-12);
    }

    #[test]
    fn posterior_survives_huge_log_joint() {
        let m = GaussianNbModel {
            priors: [0.5, 0.5],
            means: [vec![0.0], vec![1.0]],
            variances: [vec![1e-6], vec![1e-6]],
            smoothing: 1e-6,
        };
        let (a, b) = m.posterior(&[0.7]).unwrap();
        assert!(b > a);
        assert!((a + b - 1.0).abs() < 1e-12);
        assert!(m.log_joint(&[0.7]).unwrap()[0] < -1e5);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(matches!(
            symmetric_model().posterior(&[1.0, 2.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn entropy_closed_forms() {
        assert_eq!(shannon_entropy((0.5, 0.5)).unwrap(), 1.0);
        assert_eq!(shannon_entropy((1.0, 0.0)).unwrap(), 0.0);
        let h = shannon_entropy((0.9, 0.1)).unwrap();
        let oracle = -(0.9f64 * 0.9f64.log2() + 0.1 * 0.1f64.log2());
        assert!((h - oracle).abs() < 1e-15);
        assert!((h - 0.4690).abs() < 1e-4);
        assert!(shannon_entropy((1.2, -0.2)).is_err());
        assert!(shannon_entropy((0.4, 0.4)).is_err());
    }

    #[test]
    fn midpoint_scores_highest() {
        let m = symmetric_model();
        let d = Dataset::new(
            1,
            vec![vec![-1.0], vec![0.0], vec![1.0], vec![2.5], vec![3.0]],
            vec![Label::Negative; 5],
        )
        .unwrap();
        let scores = score_entropy(&m, &d).unwrap();
        let best = scores.iter().max_by(|a, b| a.entropy.total_cmp(&b.entropy)).unwrap();
        assert_eq!(best.sample_index, 2);
        for s in &scores {
            let p = m.posterior(d.x(s.sample_index)).unwrap();
            assert_eq!(s.posterior, p);
            assert_eq!(s.entropy, shannon_entropy(p).unwrap());
        }
    }

    #[test]
    fn scores_are_permutation_equivariant() {
        let m = symmetric_model();
        let xs = vec![vec![-0.3], vec![1.7], vec![0.9], vec![4.0]];
        let d = Dataset::new(1, xs.clone(), vec![Label::Negative; 4]).unwrap();
        let perm = [2usize, 0, 3, 1];
        let scores = score_entropy(&m, &d).unwrap();
        let permuted = score_entropy(&m, &d.subset(&perm)).unwrap();
        for (k, &i) in perm.iter().enumerate() {
            assert_eq!(permuted[k].entropy, scores[i].entropy);
        }
    }

    fn random_data() -> impl Strategy<Value = Dataset> {
        proptest::collection::vec((proptest::collection::vec(-5.0f64..5.0, 2), any::<bool>()), 4..40).prop_map(|rows| {
            let mut rows = rows;
            rows[0].1 = true;
            rows[1].1 = false;
            let (f, l): (Vec<_>, Vec<_>) = rows
                .into_iter()
                .map(|(x, p)| (x, if p { Label::Positive } else { Label::Negative }))
                .unzip();
            Dataset::new(2, f, l).unwrap()
        })
    }

    proptest! {
        #[test]
        fn posterior_sums_to_one(d in random_data(), x in proptest::collection::vec(-1e3f64..1e3, 2)) {
            let m = fit_gnb(&d, None, VarSmoothing::default()).unwrap();
            let (a, b) = m.posterior(&x).unwrap();
            prop_assert!((a + b - 1.0).abs() < 1e-9);
            prop_assert!((0.0..=1.0).contains(&a));
        }

        #[test]
        fn uniform_weights_match_unweighted(d in random_data(), w in 0.01f64..10.0) {
            let plain = fit_gnb(&d, None, VarSmoothing::default()).unwrap();
            let weights = vec![w; d.len()];
            let weighted = fit_gnb(&d, Some(&weights), VarSmoothing::default()).unwrap();
            for c in 0..2 {
                prop_assert!((plain.priors[c] - weighted.priors[c]).abs() < 1e-12);
                for j in 0..2 {
                    prop_assert!((plain.means[c][j] - weighted.means[c][j]).abs() < 1e-12);
                    prop_assert!((plain.variances[c][j] - weighted.variances[c][j]).abs() < 1e-12);
                }
            }
        }

        #[test]
        fn entropy_symmetric(p in 0.0f64..=1.0) {
            prop_assert_eq!(shannon_entropy((p, 1.0 - p)).unwrap(), shannon_entropy((1.0 - p, p)).unwrap());
        }

        #[test]
        fn entropy_strictly_concave(p in 0.0f64..=1.0, q in 0.0f64..=1.0) {
            prop_assume!((p - q).abs() > 1e-6);
            let h = |v: f64| shannon_entropy((v, 1.0 - v)).unwrap();
            prop_assert!(h((p + q) / 2.0) > (h(p) + h(q)) / 2.0);
        }

        #[test]
        fn entropy_monotone_toward_half(p in 0.0f64..=1.0, t1 in 0.0f64..=1.0, t2 in 0.0f64..=1.0) {
            let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
            let along = |t: f64| p + t * (0.5 - p);
            let h = |v: f64| shannon_entropy((v, 1.0 - v)).unwrap();
            prop_assert!(h(along(hi)) + 1e-15 >= h(along(lo)));
        }
    }
}
