use serde::{Deserialize, Serialize};

use crate::data::{Dataset, Label};
use crate::entropy::{fit_gnb, GaussianNbModel, VarSmoothing};
use crate::error::{invalid, Error, Result};
use crate::neighbors::k_nearest;

/// A weak learner trained on weighted samples.
pub trait BaseLearner {
    /// Trains on `data` with one non-negative weight per sample.
    fn fit(&mut self, data: &Dataset, weights: &[f64]) -> Result<()>;

    /// Real-valued margin; positive means the positive class.
    fn score(&self, x: &[f64]) -> Result<f64>;

    fn predict(&self, x: &[f64]) -> Result<Label> {
        Ok(Label::from_margin(self.score(x)?))
    }
}

fn check_weights(data: &Dataset, weights: &[f64]) -> Result<f64> {
    if weights.len() != data.len() {
        return Err(Error::DimensionMismatch {
            expected: data.len(),
            found: weights.len(),
        });
    }
    if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
        return Err(invalid("weights must be finite and non-negative"));
    }
    let total: f64 = weights.iter().sum();
    if total.is_nan() || total <= 0.0 {
        return Err(invalid("weights must have a positive sum"));
    }
    Ok(total)
}

/// Depth-one threshold rule: positive iff `polarity * (x[feature] - threshold) > 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionStump {
    pub feature_index: usize,
    #[serde(with = "crate::serde_float::scalar")]
    pub threshold: f64,
    pub polarity: i8,
    /// Weighted 0-1 error on the fitting data, as a fraction of total weight.
    #[serde(with = "crate::serde_float::scalar")]
    pub training_error: f64,
}

impl Default for DecisionStump {
    fn default() -> Self {
        Self {
            feature_index: 0,
            threshold: f64::NEG_INFINITY,
            polarity: 1,
            training_error: f64::NAN,
        }
    }
}

/// Exhaustive weighted stump search over every feature, every midpoint
/// between consecutive distinct values plus the two infinite sentinels,
/// and both polarities. Ties go to the lower feature, then the lower
/// threshold, then positive polarity.
pub fn fit_stump(data: &Dataset, weights: &[f64]) -> Result<DecisionStump> {
    data.require_both_classes()?;
    let total = check_weights(data, weights)?;
    let tol = 1e-12 * total;
    let pos_total: f64 = data
        .labels()
        .iter()
        .zip(weights)
        .filter(|(l, _)| **l == Label::Positive)
        .map(|(_, w)| w)
        .sum();
    let neg_total = total - pos_total;

    let mut best = DecisionStump::default();
    let mut best_err = f64::INFINITY;
    let mut consider = |feature: usize, threshold: f64, pos_below: f64, neg_below: f64| {
        // polarity +1 predicts positive above the threshold
        let err_plus = pos_below + (neg_total - neg_below);
        let err_minus = neg_below + (pos_total - pos_below);
        for (err, polarity) in [(err_plus, 1i8), (err_minus, -1i8)] {
            if err < best_err - tol {
                best_err = err;
                best = DecisionStump {
                    feature_index: feature,
                    threshold,
                    polarity,
                    training_error: 0.0,
                };
            }
        }
    };

    let mut order: Vec<usize> = (0..data.len()).collect();
    for j in 0..data.dimension() {
        order.sort_by(|&a, &b| data.x(a)[j].total_cmp(&data.x(b)[j]).then(a.cmp(&b)));
        consider(j, f64::NEG_INFINITY, 0.0, 0.0);
        let (mut pos_below, mut neg_below) = (0.0, 0.0);
        let mut idx = 0;
        while idx < order.len() {
            let value = data.x(order[idx])[j];
            while idx < order.len() && data.x(order[idx])[j] == value {
                let i = order[idx];
                match data.y(i) {
                    Label::Positive => pos_below += weights[i],
                    Label::Negative => neg_below += weights[i],
                }
                idx += 1;
            }
            if idx < order.len() {
                let next = data.x(order[idx])[j];
                let mut mid = value + (next - value) / 2.0;
                if mid >= next {
                    mid = value;
                }
                consider(j, mid, pos_below, neg_below);
            }
        }
        consider(j, f64::INFINITY, pos_total, neg_total);
    }
    best.training_error = (best_err / total).max(0.0);
    Ok(best)
}

impl DecisionStump {
    fn check(&self, x: &[f64]) -> Result<()> {
        if self.feature_index >= x.len() {
            return Err(Error::DimensionMismatch {
                expected: self.feature_index + 1,
                found: x.len(),
            });
        }
        Ok(())
    }
}

impl BaseLearner for DecisionStump {
    fn fit(&mut self, data: &Dataset, weights: &[f64]) -> Result<()> {
        *self = fit_stump(data, weights)?;
        Ok(())
    }

    fn score(&self, x: &[f64]) -> Result<f64> {
        self.check(x)?;
        Ok(f64::from(self.polarity) * (x[self.feature_index] - self.threshold))
    }
}

/// Gaussian naive Bayes as a weak learner. `var_smoothing` is relative to
/// the largest feature variance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GnbClassifier {
    pub var_smoothing: f64,
    pub model: Option<GaussianNbModel>,
}

impl GnbClassifier {
    pub fn new(var_smoothing: f64) -> Self {
        Self {
            var_smoothing,
            model: None,
        }
    }
}

impl Default for GnbClassifier {
    fn default() -> Self {
        Self::new(1.0)
    }
}

impl BaseLearner for GnbClassifier {
    fn fit(&mut self, data: &Dataset, weights: &[f64]) -> Result<()> {
        check_weights(data, weights)?;
        self.model = Some(fit_gnb(
            data,
            Some(weights),
            VarSmoothing::Relative(self.var_smoothing),
        )?);
        Ok(())
    }

    /// Log-odds of the positive class.
    fn score(&self, x: &[f64]) -> Result<f64> {
        self.model
            .as_ref()
            .ok_or_else(|| invalid("naive Bayes learner used before fit"))?
            .log_odds(x)
    }
}

/// Weighted k-nearest-neighbour vote.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnnClassifier {
    pub k: usize,
    pub points: Vec<Vec<f64>>,
    pub labels: Vec<Label>,
    pub weights: Vec<f64>,
}

impl KnnClassifier {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            points: Vec::new(),
            labels: Vec::new(),
            weights: Vec::new(),
        }
    }
}

impl Default for KnnClassifier {
    fn default() -> Self {
        Self::new(10)
    }
}

impl BaseLearner for KnnClassifier {
    fn fit(&mut self, data: &Dataset, weights: &[f64]) -> Result<()> {
        if self.k == 0 {
            return Err(invalid("k-NN needs k >= 1"));
        }
        let total = check_weights(data, weights)?;
        self.points = data.features().to_vec();
        self.labels = data.labels().to_vec();
        self.weights = weights.iter().map(|w| w / total).collect();
        Ok(())
    }

    /// `(w_pos - w_neg) / (w_pos + w_neg)` over the `k` nearest points.
    fn score(&self, x: &[f64]) -> Result<f64> {
        if self.points.is_empty() {
            return Err(invalid("k-NN learner used before fit"));
        }
        if x.len() != self.points[0].len() {
            return Err(Error::DimensionMismatch {
                expected: self.points[0].len(),
                found: x.len(),
            });
        }
        let (mut pos, mut neg) = (0.0, 0.0);
        for i in k_nearest(&self.points, x, self.k, None) {
            match self.labels[i] {
                Label::Positive => pos += self.weights[i],
                Label::Negative => neg += self.weights[i],
            }
        }
        let total = pos + neg;
        Ok(if total > 0.0 { (pos - neg) / total } else { 0.0 })
    }
}

/// Any of the bundled weak learners; serialises with a `type` tag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Learner {
    Stump(DecisionStump),
    Gnb(GnbClassifier),
    Knn(KnnClassifier),
}

impl BaseLearner for Learner {
    fn fit(&mut self, data: &Dataset, weights: &[f64]) -> Result<()> {
        match self {
            Learner::Stump(l) => l.fit(data, weights),
            Learner::Gnb(l) => l.fit(data, weights),
            Learner::Knn(l) => l.fit(data, weights),
        }
    }

    fn score(&self, x: &[f64]) -> Result<f64> {
        match self {
            Learner::Stump(l) => l.score(x),
            Learner::Gnb(l) => l.score(x),
            Learner::Knn(l) => l.score(x),
        }
    }
}

/// Which weak learner to build.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum LearnerKind {
    Stump,
    Gnb { var_smoothing: f64 },
    Knn { k: usize },
}

impl LearnerKind {
    pub fn gnb() -> Self {
        LearnerKind::Gnb { var_smoothing: 1.0 }
    }

    pub fn knn() -> Self {
        LearnerKind::Knn { k: 10 }
    }

    /// Parses `stump`, `gnb` or `knn` with default parameters.
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "stump" => Ok(LearnerKind::Stump),
            "gnb" => Ok(Self::gnb()),
            "knn" => Ok(Self::knn()),
            other => Err(invalid(format!("unknown base learner {other:?}"))),
        }
    }

    pub fn build(self) -> Learner {
        match self {
            LearnerKind::Stump => Learner::Stump(DecisionStump::default()),
            LearnerKind::Gnb { var_smoothing } => Learner::Gnb(GnbClassifier::new(var_smoothing)),
            LearnerKind::Knn { k } => Learner::Knn(KnnClassifier::new(k)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::make_gaussian_blobs;
    use proptest::prelude::*;

    fn line(xs: &[f64], ys: &[Label]) -> Dataset {
        Dataset::new(1, xs.iter().map(|&v| vec![v]).collect(), ys.to_vec()).unwrap()
    }

    fn weighted_error(s: &DecisionStump, d: &Dataset, w: &[f64]) -> f64 {
        d.iter()
            .zip(w)
            .filter(|((x, y), _)| s.predict(x).unwrap() != *y)
            .map(|(_, w)| w)
            .sum()
    }

    #[test]
    fn forced_split() {
        use Label::*;
        let d = line(&[0.0, 1.0, 2.0, 3.0], &[Negative, Negative, Positive, Positive]);
        let s = fit_stump(&d, &[0.25; 4]).unwrap();
        assert_eq!(s.feature_index, 0);
        assert_eq!(s.threshold, 1.5);
        assert_eq!(s.polarity, 1);
        assert_eq!(s.training_error, 0.0);
    }

    #[test]
    fn heavy_weight_isolates_point() {
        use Label::*;
        // A positive at 0 among negatives; enough weight forces the split
        // to put it on the positive side.
        let d = line(
            &[0.0, 1.0, 2.0, 3.0, 4.0],
            &[Positive, Negative, Negative, Positive, Positive],
        );
        let w = [10.0, 1.0, 1.0, 1.0, 1.0];
        let s = fit_stump(&d, &w).unwrap();
        assert_eq!(s.predict(&[0.0]).unwrap(), Positive);

        // Oracle: brute force over all candidate thresholds and polarities.
        let mut best = f64::INFINITY;
        for t in [f64::NEG_INFINITY, 0.5, 1.5, 2.5, 3.5, f64::INFINITY] {
            for p in [1i8, -1] {
                let cand = DecisionStump {
                    feature_index: 0,
                    threshold: t,
                    polarity: p,
                    training_error: 0.0,
                };
                best = best.min(weighted_error(&cand, &d, &w));
            }
        }
        assert!((weighted_error(&s, &d, &w) - best).abs() < 1e-12);
        assert_eq!(best, 2.0);
    }

    #[test]
    fn constant_features_fall_back_to_majority_weight() {
        use Label::*;
        let d = line(&[1.0, 1.0, 1.0], &[Negative, Negative, Positive]);
        let s = fit_stump(&d, &[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(s.threshold, f64::NEG_INFINITY);
        assert_eq!(s.predict(&[1.0]).unwrap(), Negative);
    }

    #[test]
    fn stump_json_carries_infinite_threshold() {
        let s = DecisionStump {
            training_error: 0.25,
            ..DecisionStump::default()
        };
        let json = serde_json::to_string(&Learner::Stump(s.clone())).unwrap();
        assert!(json.contains("\"-inf\""));
        assert_eq!(serde_json::from_str::<Learner>(&json).unwrap(), Learner::Stump(s));
    }

    #[test]
    fn knn_weighted_vote() {
        use Label::*;
        let d = line(&[0.0, 0.1, 0.2, 5.0], &[Positive, Negative, Negative, Positive]);
        let mut knn = KnnClassifier::new(3);
        knn.fit(&d, &[1.0, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!(knn.predict(&[0.05]).unwrap(), Negative);
        knn.fit(&d, &[5.0, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!(knn.predict(&[0.05]).unwrap(), Positive);
    }

    #[test]
    fn gnb_learner_scores_log_odds() {
        let d = make_gaussian_blobs(50, 50, 2, 4.0, 3).unwrap();
        let mut g = GnbClassifier::default();
        g.fit(&d, &vec![1.0; d.len()]).unwrap();
        assert_eq!(g.predict(&[4.0, 0.0]).unwrap(), Label::Positive);
        assert_eq!(g.predict(&[0.0, 0.0]).unwrap(), Label::Negative);
        assert!(GnbClassifier::default().score(&[0.0, 0.0]).is_err());
    }

    #[test]
    fn learner_kind_parse() {
        assert_eq!(LearnerKind::parse("stump").unwrap(), LearnerKind::Stump);
        assert!(matches!(
            LearnerKind::parse("knn").unwrap().build(),
            Learner::Knn(KnnClassifier { k: 10, .. })
        ));
        assert!(LearnerKind::parse("svm").is_err());
    }

    fn random_data() -> impl Strategy<Value = Dataset> {
        proptest::collection::vec((proptest::collection::vec(-3.0f64..3.0, 2), any::<bool>()), 4..30).prop_map(|rows| {
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
        fn stump_beats_constant_classifiers(d in random_data(), seed in 0u64..1000) {
            let w: Vec<f64> = (0..d.len()).map(|i| 0.1 + ((i as u64 * 7919 + seed) % 13) as f64).collect();
            let s = fit_stump(&d, &w).unwrap();
            let err = weighted_error(&s, &d, &w);
            let pos: f64 = d.labels().iter().zip(&w).filter(|(l, _)| **l == Label::Positive).map(|(_, w)| w).sum();
            let neg: f64 = w.iter().sum::<f64>() - pos;
            prop_assert!(err <= pos.min(neg) + 1e-9);
            prop_assert!((err / w.iter().sum::<f64>() - s.training_error).abs() < 1e-9);
        }

        #[test]
        fn weight_scaling_leaves_predictions(d in random_data()) {
            let w: Vec<f64> = (0..d.len()).map(|i| 1.0 + (i % 5) as f64).collect();
            let scaled: Vec<f64> = w.iter().map(|v| v * 4.0).collect();
            for kind in [LearnerKind::Stump, LearnerKind::gnb(), LearnerKind::Knn { k: 3 }] {
                let mut a = kind.build();
                let mut b = kind.build();
                a.fit(&d, &w).unwrap();
                b.fit(&d, &scaled).unwrap();
                for (x, _) in d.iter() {
                    prop_assert_eq!(a.predict(x).unwrap(), b.predict(x).unwrap());
                    prop_assert_eq!(a.predict(x).unwrap(), Label::from_margin(a.score(x).unwrap()));
                }
            }
        }
    }
}
