//! Confusion-matrix metrics, ROC/PR curves, replication statistics and
//! Fisher's discriminant ratio.
//!
//! The positive class is the minority. Every ratio with a zero denominator
//! is reported as 0 and named in [`MetricReport::undefined`].

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::data::{Dataset, Label};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tn: u64,
}

impl ConfusionMatrix {
    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.fn_ + self.tn
    }
}

pub fn confusion(predictions: &[Label], truth: &[Label]) -> Result<ConfusionMatrix> {
    if predictions.len() != truth.len() {
        return Err(Error::DimensionMismatch {
            expected: truth.len(),
            found: predictions.len(),
        });
    }
    if truth.is_empty() {
        return Err(invalid("cannot build a confusion matrix from no samples"));
    }
    let mut cm = ConfusionMatrix::default();
    for (p, t) in predictions.iter().zip(truth) {
        match (p, t) {
            (Label::Positive, Label::Positive) => cm.tp += 1,
            (Label::Positive, Label::Negative) => cm.fp += 1,
            (Label::Negative, Label::Positive) => cm.fn_ += 1,
            (Label::Negative, Label::Negative) => cm.tn += 1,
        }
    }
    Ok(cm)
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct MetricValues {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// `sqrt(precision * recall)`.
    pub g_means: f64,
    /// `sqrt(recall * specificity)`.
    pub g_means_spec: f64,
}

impl MetricValues {
    pub fn get(&self, name: &str) -> Option<f64> {
        Some(match name {
            "accuracy" => self.accuracy,
            "precision" => self.precision,
            "recall" => self.recall,
            "f1" => self.f1,
            "g_means" => self.g_means,
            "g_means_spec" => self.g_means_spec,
            _ => return None,
        })
    }
}

pub const METRIC_NAMES: [&str; 6] = ["accuracy", "precision", "recall", "f1", "g_means", "g_means_spec"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    /// Metrics of the positive (minority) class.
    pub positive: MetricValues,
    /// Unweighted mean of the per-class metrics.
    #[serde(rename = "macro")]
    pub macro_avg: MetricValues,
    pub auc: Option<f64>,
    pub confusion: ConfusionMatrix,
    /// Ratios whose denominator was zero and were set to 0.
    pub undefined: Vec<String>,
}

fn ratio(num: u64, den: u64, name: &str, undefined: &mut Vec<String>) -> f64 {
    if den == 0 {
        undefined.push(name.to_string());
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn harmonic(p: f64, r: f64, name: &str, undefined: &mut Vec<String>) -> f64 {
    if p + r > 0.0 {
        2.0 * p * r / (p + r)
    } else {
        undefined.push(name.to_string());
        0.0
    }
}

/// All confusion-derived metrics; `auc` is left unset.
pub fn binary_metrics(cm: &ConfusionMatrix) -> Result<MetricReport> {
    let total = cm.total();
    if total == 0 {
        return Err(invalid("empty confusion matrix"));
    }
    let mut undefined = Vec::new();
    let accuracy = (cm.tp + cm.tn) as f64 / total as f64;

    let precision_pos = ratio(cm.tp, cm.tp + cm.fp, "precision_pos", &mut undefined);
    let recall_pos = ratio(cm.tp, cm.tp + cm.fn_, "recall_pos", &mut undefined);
    let precision_neg = ratio(cm.tn, cm.tn + cm.fn_, "precision_neg", &mut undefined);
    let recall_neg = ratio(cm.tn, cm.tn + cm.fp, "recall_neg", &mut undefined);
    let f1_pos = harmonic(precision_pos, recall_pos, "f1_pos", &mut undefined);
    let f1_neg = harmonic(precision_neg, recall_neg, "f1_neg", &mut undefined);
    let gm_pos = (precision_pos * recall_pos).sqrt();
    let gm_neg = (precision_neg * recall_neg).sqrt();
    let gm_spec = (recall_pos * recall_neg).sqrt();

    Ok(MetricReport {
        positive: MetricValues {
            accuracy,
            precision: precision_pos,
            recall: recall_pos,
            f1: f1_pos,
            g_means: gm_pos,
            g_means_spec: gm_spec,
        },
        macro_avg: MetricValues {
            accuracy,
            precision: (precision_pos + precision_neg) / 2.0,
            recall: (recall_pos + recall_neg) / 2.0,
            f1: (f1_pos + f1_neg) / 2.0,
            g_means: (gm_pos + gm_neg) / 2.0,
            g_means_spec: gm_spec,
        },
        auc: None,
        confusion: *cm,
        undefined,
    })
}

/// Scores a prediction run: confusion metrics plus AUC from the margins
/// when both classes are present in `truth`.
pub fn evaluate(predictions: &[Label], scores: &[f64], truth: &[Label]) -> Result<MetricReport> {
    let mut report = binary_metrics(&confusion(predictions, truth)?)?;
    let both = truth.contains(&Label::Positive) && truth.contains(&Label::Negative);
    if both {
        report.auc = Some(roc_auc(scores, truth)?);
    } else {
        report.undefined.push("auc".into());
    }
    Ok(report)
}

fn check_scores(scores: &[f64], truth: &[Label]) -> Result<(u64, u64)> {
    if scores.len() != truth.len() {
        return Err(Error::DimensionMismatch {
            expected: truth.len(),
            found: scores.len(),
        });
    }
    if let Some(i) = scores.iter().position(|s| s.is_nan()) {
        return Err(invalid(format!("score {i} is NaN")));
    }
    let pos = truth.iter().filter(|l| **l == Label::Positive).count() as u64;
    let neg = truth.len() as u64 - pos;
    if pos == 0 || neg == 0 {
        return Err(Error::SingleClass);
    }
    Ok((pos, neg))
}

/// Groups of `(score, positives, negatives)` in descending score order.
fn threshold_groups(scores: &[f64], truth: &[Label]) -> Vec<(f64, u64, u64)> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    let mut groups: Vec<(f64, u64, u64)> = Vec::new();
    for i in order {
        let s = scores[i];
        let (p, n) = match truth[i] {
            Label::Positive => (1, 0),
            Label::Negative => (0, 1),
        };
        match groups.last_mut() {
            Some(g) if g.0 == s => {
                g.1 += p;
                g.2 += n;
            }
            _ => groups.push((s, p, n)),
        }
    }
    groups
}

/// Probability that a random positive outscores a random negative, ties
/// counting one half. Computed exactly from integer pair counts.
pub fn roc_auc(scores: &[f64], truth: &[Label]) -> Result<f64> {
    let (pos, neg) = check_scores(scores, truth)?;
    // Twice the number of winning pairs, so ties stay integral.
    let mut twice_wins: u64 = 0;
    let mut neg_below = neg;
    for (_, p, n) in threshold_groups(scores, truth) {
        neg_below -= n;
        twice_wins += p * (2 * neg_below + n);
    }
    Ok(twice_wins as f64 / (2 * pos * neg) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RocPoint {
    #[serde(with = "crate::serde_float::scalar")]
    pub threshold: f64,
    pub fpr: f64,
    pub tpr: f64,
}

/// ROC points from `(0, 0)` through every distinct threshold, descending.
pub fn roc_curve(scores: &[f64], truth: &[Label]) -> Result<Vec<RocPoint>> {
    let (pos, neg) = check_scores(scores, truth)?;
    let mut out = vec![RocPoint {
        threshold: f64::INFINITY,
        fpr: 0.0,
        tpr: 0.0,
    }];
    let (mut tp, mut fp) = (0, 0);
    for (s, p, n) in threshold_groups(scores, truth) {
        tp += p;
        fp += n;
        out.push(RocPoint {
            threshold: s,
            fpr: fp as f64 / neg as f64,
            tpr: tp as f64 / pos as f64,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrPoint {
    #[serde(with = "crate::serde_float::scalar")]
    pub threshold: f64,
    pub recall: f64,
    pub precision: f64,
}

/// One point per distinct threshold, descending; a sample counts as
/// positive when its score is at least the threshold.
pub fn pr_curve(scores: &[f64], truth: &[Label]) -> Result<Vec<PrPoint>> {
    let (pos, _) = check_scores(scores, truth)?;
    let (mut tp, mut fp) = (0u64, 0u64);
    Ok(threshold_groups(scores, truth)
        .into_iter()
        .map(|(s, p, n)| {
            tp += p;
            fp += n;
            PrPoint {
                threshold: s,
                recall: tp as f64 / pos as f64,
                precision: tp as f64 / (tp + fp) as f64,
            }
        })
        .collect())
}

/// Step-wise area under the PR curve: `sum (R_i - R_{i-1}) * P_i`.
pub fn average_precision(curve: &[PrPoint]) -> f64 {
    let mut prev = 0.0;
    let mut ap = 0.0;
    for p in curve {
        ap += (p.recall - prev) * p.precision;
        prev = p.recall;
    }
    ap
}

/// Writes two named columns, one row per point.
pub fn write_curve_csv(path: &Path, header: (&str, &str), points: &[(f64, f64)]) -> Result<()> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut f = std::io::BufWriter::new(std::fs::File::create(path).map_err(io)?);
    writeln!(f, "{},{}", header.0, header.1).map_err(io)?;
    for (a, b) in points {
        writeln!(f, "{a},{b}").map_err(io)?;
    }
    f.flush().map_err(io)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicationSummary {
    pub metric_name: String,
    pub values: Vec<f64>,
    pub mean: f64,
    /// Sample standard deviation.
    pub std_dev: f64,
}

pub fn replication_stats(metric_name: &str, values: &[f64]) -> Result<ReplicationSummary> {
    if values.len() < 2 {
        return Err(invalid(format!(
            "{metric_name}: need at least 2 replications, got {}",
            values.len()
        )));
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
    Ok(ReplicationSummary {
        metric_name: metric_name.to_string(),
        values: values.to_vec(),
        mean,
        std_dev: (ss / (n - 1.0)).sqrt(),
    })
}

/// Summaries of every metric in both variants plus AUC, named
/// `positive.<metric>`, `macro.<metric>` and `auc`.
pub fn summarize_reports(reports: &[MetricReport]) -> Result<Vec<ReplicationSummary>> {
    let mut out = Vec::new();
    for (variant, pick) in [
        (
            "positive",
            (|r: &MetricReport| r.positive) as fn(&MetricReport) -> MetricValues,
        ),
        ("macro", |r: &MetricReport| r.macro_avg),
    ] {
        for name in METRIC_NAMES {
            let values: Vec<f64> = reports.iter().map(|r| pick(r).get(name).unwrap_or(0.0)).collect();
            out.push(replication_stats(&format!("{variant}.{name}"), &values)?);
        }
    }
    let aucs: Vec<f64> = reports.iter().filter_map(|r| r.auc).collect();
    if aucs.len() == reports.len() {
        out.push(replication_stats("auc", &aucs)?);
    }
    Ok(out)
}

fn class_moments(data: &Dataset, feature: usize, label: Label) -> Result<(f64, f64)> {
    let values: Vec<f64> = data
        .iter()
        .filter(|(_, y)| *y == label)
        .map(|(x, _)| x[feature])
        .collect();
    if values.len() < 2 {
        return Err(Error::ClassTooSmall {
            class: if label == Label::Positive {
                "positive"
            } else {
                "negative"
            },
            found: values.len(),
            required: 2,
        });
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Ok((mean, var))
}

/// `(mu_1 - mu_2)^2 / (s_1^2 + s_2^2)` with sample variances. A zero
/// denominator gives infinity when the means differ and 0 otherwise.
pub fn fisher_ratio(data: &Dataset, feature: usize) -> Result<f64> {
    if feature >= data.dimension() {
        return Err(invalid(format!(
            "feature {feature} out of range for dimension {}",
            data.dimension()
        )));
    }
    let (m1, v1) = class_moments(data, feature, Label::Positive)?;
    let (m2, v2) = class_moments(data, feature, Label::Negative)?;
    let num = (m1 - m2).powi(2);
    let den = v1 + v2;
    Ok(if den > 0.0 {
        num / den
    } else if num > 0.0 {
        f64::INFINITY
    } else {
        0.0
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverlapReport {
    pub dimension: usize,
    #[serde(with = "crate::serde_float::vec")]
    pub ratios_a: Vec<f64>,
    #[serde(with = "crate::serde_float::vec")]
    pub ratios_b: Vec<f64>,
    pub count_a_smaller: usize,
    pub count_b_smaller: usize,
    pub ties: usize,
}

/// Per-feature Fisher ratios of two datasets and how often each is smaller.
pub fn overlap_feature_count(a: &Dataset, b: &Dataset) -> Result<OverlapReport> {
    if a.dimension() != b.dimension() {
        return Err(Error::DimensionMismatch {
            expected: a.dimension(),
            found: b.dimension(),
        });
    }
    let ratios = |d: &Dataset| {
        (0..d.dimension())
            .map(|j| fisher_ratio(d, j))
            .collect::<Result<Vec<_>>>()
    };
    let ratios_a = ratios(a)?;
    let ratios_b = ratios(b)?;
    let (mut a_smaller, mut b_smaller, mut ties) = (0, 0, 0);
    for (ra, rb) in ratios_a.iter().zip(&ratios_b) {
        if ra < rb {
            a_smaller += 1;
        } else if rb < ra {
            b_smaller += 1;
        } else {
            ties += 1;
        }
    }
    Ok(OverlapReport {
        dimension: a.dimension(),
        ratios_a,
        ratios_b,
        count_a_smaller: a_smaller,
        count_b_smaller: b_smaller,
        ties,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::make_gaussian_blobs;
    use proptest::prelude::*;
    use Label::{Negative as N, Positive as P};

    #[test]
    fn worked_confusion() {
        let cm = ConfusionMatrix {
            tp: 50,
            fp: 10,
            fn_: 5,
            tn: 35,
        };
        let r = binary_metrics(&cm).unwrap();
        assert!((r.positive.accuracy - 0.85).abs() < 1e-12);
        assert!((r.positive.precision - 50.0 / 60.0).abs() < 1e-12);
        assert!((r.positive.recall - 50.0 / 55.0).abs() < 1e-12);
        assert!((r.positive.f1 - 0.86957).abs() < 1e-4);
        assert!((r.positive.g_means - 0.87042).abs() < 1e-4);
        assert!(r.undefined.is_empty());
    }

    #[test]
    fn degenerate_predictors() {
        let truth = [P, N, N, N];
        let r = binary_metrics(&confusion(&[N; 4], &truth).unwrap()).unwrap();
        assert_eq!(r.positive.recall, 0.0);
        assert_eq!(r.macro_avg.recall, 0.5);
        assert!(r.undefined.contains(&"precision_pos".to_string()));

        let r = binary_metrics(&confusion(&truth, &truth).unwrap()).unwrap();
        for name in METRIC_NAMES {
            assert_eq!(r.positive.get(name), Some(1.0));
            assert_eq!(r.macro_avg.get(name), Some(1.0));
        }

        let all_pos = confusion(&[P; 3], &[P; 3]).unwrap();
        assert_eq!((all_pos.tp, all_pos.fp, all_pos.fn_, all_pos.tn), (3, 0, 0, 0));
        let inv = confusion(&[N, P], &[P, N]).unwrap();
        assert_eq!((inv.tp, inv.tn), (0, 0));
        assert!(confusion(&[P], &[P, N]).is_err());
        assert!(binary_metrics(&ConfusionMatrix::default()).is_err());
    }

    #[test]
    fn auc_examples() {
        assert_eq!(roc_auc(&[0.9, 0.4, 0.6, 0.1], &[P, N, P, N]).unwrap(), 1.0);
        assert_eq!(roc_auc(&[1.0; 4], &[P, N, P, N]).unwrap(), 0.5);
        assert!(roc_auc(&[1.0, 2.0], &[P, P]).is_err());
        assert!(roc_auc(&[f64::NAN, 2.0], &[P, N]).is_err());
    }

    #[test]
    fn roc_curve_ends_at_corner() {
        let c = roc_curve(&[0.9, 0.4, 0.6, 0.1], &[P, N, P, N]).unwrap();
        assert_eq!((c[0].fpr, c[0].tpr), (0.0, 0.0));
        let last = c.last().unwrap();
        assert_eq!((last.fpr, last.tpr), (1.0, 1.0));
    }

    #[test]
    fn pr_curve_cases() {
        let c = pr_curve(&[0.9, 0.8, 0.2, 0.1], &[P, P, N, N]).unwrap();
        assert!(c.iter().take(2).all(|p| p.precision == 1.0));
        let c = pr_curve(&[0.3; 4], &[P, N, N, N]).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!((c[0].recall, c[0].precision), (1.0, 0.25));
    }

    #[test]
    fn average_precision_matches_enumeration() {
        let scores = [0.95, 0.9, 0.81, 0.7, 0.66, 0.5, 0.43, 0.3, 0.2, 0.05];
        let truth = [P, N, P, P, N, N, P, N, N, P];
        let ap = average_precision(&pr_curve(&scores, &truth).unwrap());
        // Mean over positives of the precision among samples scoring at least as high.
        let mut sum = 0.0;
        let mut npos = 0.0;
        for i in 0..10 {
            if truth[i] == P {
                npos += 1.0;
                let above = (0..10).filter(|&j| scores[j] >= scores[i]).count() as f64;
                let pos_above = (0..10).filter(|&j| scores[j] >= scores[i] && truth[j] == P).count() as f64;
                sum += pos_above / above;
            }
        }
        assert!((ap - sum / npos).abs() < 1e-12);
    }

    #[test]
    fn replication_examples() {
        let s = replication_stats("x", &[3.0; 5]).unwrap();
        assert_eq!(s.std_dev, 0.0);
        let s = replication_stats("x", &[0.0, 1.0]).unwrap();
        assert_eq!(s.mean, 0.5);
        assert!((s.std_dev - 0.5f64.sqrt()).abs() < 1e-12);
        assert!(replication_stats("x", &[1.0]).is_err());
    }

    #[test]
    fn fisher_worked_value() {
        // Class means 0 and 2, both with sample variance 1.
        let xs = [-1.0, 0.0, 1.0, 1.0, 2.0, 3.0];
        let ys = [N, N, N, P, P, P];
        let d = Dataset::new(1, xs.iter().map(|&v| vec![v]).collect(), ys.to_vec()).unwrap();
        assert!((fisher_ratio(&d, 0).unwrap() - 2.0).abs() < 1e-12);
        let flat = Dataset::new(1, vec![vec![1.0]; 4], vec![N, N, P, P]).unwrap();
        assert_eq!(fisher_ratio(&flat, 0).unwrap(), 0.0);
        let apart = Dataset::new(1, vec![vec![0.0], vec![0.0], vec![1.0], vec![1.0]], vec![N, N, P, P]).unwrap();
        assert_eq!(fisher_ratio(&apart, 0).unwrap(), f64::INFINITY);
        assert!(fisher_ratio(&d, 1).is_err());
    }

    #[test]
    fn overlap_self_comparison_is_all_ties() {
        let d = make_gaussian_blobs(40, 20, 4, 2.0, 1).unwrap();
        let r = overlap_feature_count(&d, &d).unwrap();
        assert_eq!((r.count_a_smaller, r.count_b_smaller, r.ties), (0, 0, 4));
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<OverlapReport>(&json).unwrap(), r);
    }

    #[test]
    fn more_separation_larger_ratio() {
        let near = make_gaussian_blobs(100, 50, 2, 1.0, 3).unwrap();
        let far = make_gaussian_blobs(100, 50, 2, 4.0, 3).unwrap();
        let r = overlap_feature_count(&near, &far).unwrap();
        assert!(r.ratios_b[0] > r.ratios_a[0]);
    }

    #[test]
    fn summaries_cover_both_variants() {
        let truth = [P, N, N, N];
        let r = evaluate(&[P, N, N, P], &[0.9, 0.1, 0.2, 0.6], &truth).unwrap();
        let s = summarize_reports(&[r.clone(), r]).unwrap();
        assert_eq!(s.len(), 2 * METRIC_NAMES.len() + 1);
        assert!(s.iter().any(|x| x.metric_name == "macro.recall"));
        assert_eq!(s.last().unwrap().metric_name, "auc");
    }

    proptest! {
        #[test]
        fn f1_and_range(tp in 0u64..50, fp in 0u64..50, fn_ in 0u64..50, tn in 0u64..50) {
            prop_assume!(tp + fp + fn_ + tn > 0);
            let cm = ConfusionMatrix { tp, fp, fn_, tn };
            let r = binary_metrics(&cm).unwrap();
            prop_assert_eq!(r.positive.accuracy, (tp + tn) as f64 / (tp + fp + fn_ + tn) as f64);
            for v in [r.positive, r.macro_avg] {
                for name in METRIC_NAMES {
                    let x = v.get(name).unwrap();
                    prop_assert!((0.0..=1.0).contains(&x));
                }
            }
            let (p, rc) = (r.positive.precision, r.positive.recall);
            if p + rc > 0.0 {
                prop_assert!((r.positive.f1 - 2.0 * p * rc / (p + rc)).abs() < 1e-12);
                prop_assert!(r.positive.f1 >= p.min(rc) - 1e-12 && r.positive.f1 <= p.max(rc) + 1e-12);
            }
        }

        #[test]
        fn auc_symmetry_and_transform(raw in proptest::collection::vec((-1e3f64..1e3, any::<bool>()), 4..40)) {
            let mut raw = raw;
            raw[0].1 = true;
            raw[1].1 = false;
            let scores: Vec<f64> = raw.iter().map(|r| r.0).collect();
            let truth: Vec<Label> = raw.iter().map(|r| if r.1 { P } else { N }).collect();
            let a = roc_auc(&scores, &truth).unwrap();
            let neg: Vec<f64> = scores.iter().map(|s| -s).collect();
            prop_assert!((a + roc_auc(&neg, &truth).unwrap() - 1.0).abs() < 1e-12);
            let warped: Vec<f64> = scores.iter().map(|s| (s / 100.0).tanh() * 3.0 + 1.0).collect();
            let mut distinct = scores.clone();
            distinct.sort_by(f64::total_cmp);
            distinct.dedup();
            let mut warped_distinct = warped.clone();
            warped_distinct.sort_by(f64::total_cmp);
            warped_distinct.dedup();
            if distinct.len() == warped_distinct.len() {
                prop_assert_eq!(a, roc_auc(&warped, &truth).unwrap());
            }
            let c = pr_curve(&scores, &truth).unwrap();
            prop_assert!(c.windows(2).all(|w| w[0].recall <= w[1].recall));
            prop_assert_eq!(c.last().unwrap().recall, 1.0);
        }

        #[test]
        fn fisher_shift_and_scale(seed in 0u64..500, shift in -50.0f64..50.0, scale in 0.1f64..10.0) {
            let d = make_gaussian_blobs(20, 10, 2, 1.0, seed).unwrap();
            let moved = Dataset::new(2, d.features().iter().map(|x| vec![x[0] + shift, x[1]]).collect(), d.labels().to_vec()).unwrap();
            let scaled = Dataset::new(2, d.features().iter().map(|x| vec![x[0] * scale, x[1]]).collect(), d.labels().to_vec()).unwrap();
            let base = fisher_ratio(&d, 0).unwrap();
            prop_assert!((fisher_ratio(&moved, 0).unwrap() - base).abs() <= 1e-9 * base.max(1.0));
            prop_assert!((fisher_ratio(&scaled, 0).unwrap() - base).abs() <= 1e-9 * base.max(1.0));
            let r = overlap_feature_count(&d, &scaled).unwrap();
            prop_assert_eq!(r.count_a_smaller + r.count_b_smaller + r.ties, 2);
        }
    }
}
