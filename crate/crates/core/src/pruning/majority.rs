use crate::data::Dataset;
use crate::entropy::{fit_gnb, score_entropy, EntropyScore, VarSmoothing};
use crate::error::{invalid, Result};

/// Result of entropy-ranked majority undersampling.
#[derive(Debug, Clone)]
pub struct MajorityPruning {
    /// Majority samples that survived, in their original order.
    pub retained: Dataset,
    pub retained_indices: Vec<usize>,
    /// Removed majority indices, lowest entropy first.
    pub removed_indices: Vec<usize>,
    /// Entropy of every input majority sample (empty when `k == 0`).
    pub scores: Vec<EntropyScore>,
}

/// Ascending entropy, lower index first.
pub(crate) fn rank_ascending(entropies: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..entropies.len()).collect();
    order.sort_by(|&a, &b| entropies[a].total_cmp(&entropies[b]).then(a.cmp(&b)));
    order
}

/// Removes the `k` majority samples whose posterior entropy, under a
/// naive-Bayes model fit on `pool`, is lowest.
pub fn majority_class_pruning(
    majority: &Dataset,
    pool: &Dataset,
    k: usize,
    smoothing: VarSmoothing,
) -> Result<MajorityPruning> {
    if k == 0 {
        return Ok(MajorityPruning {
            retained: majority.clone(),
            retained_indices: (0..majority.len()).collect(),
            removed_indices: Vec::new(),
            scores: Vec::new(),
        });
    }
    if k >= majority.len() {
        return Err(invalid(format!(
            "cannot remove {k} of {} majority samples",
            majority.len()
        )));
    }
    let model = fit_gnb(pool, None, smoothing)?;
    let scores = score_entropy(&model, majority)?;
    let entropies: Vec<f64> = scores.iter().map(|s| s.entropy).collect();
    let order = rank_ascending(&entropies);
    let removed_indices = order[..k].to_vec();
    let mut retained_indices = order[k..].to_vec();
    retained_indices.sort_unstable();
    Ok(MajorityPruning {
        retained: majority.subset(&retained_indices),
        retained_indices,
        removed_indices,
        scores,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{make_gaussian_blobs, partition_by_class, Label};

    #[test]
    fn drops_lowest_entropy() {
        // Pool: neg ~ around 0, pos ~ around 2. Majority points at 1 (most
        // ambiguous), 0.5, and -3 (least ambiguous).
        let pool = Dataset::new(
            1,
            vec![vec![-0.5], vec![0.5], vec![1.5], vec![2.5]],
            vec![Label::Negative, Label::Negative, Label::Positive, Label::Positive],
        )
        .unwrap();
        let maj = Dataset::new(1, vec![vec![-3.0], vec![1.0], vec![0.5]], vec![Label::Negative; 3]).unwrap();
        let out = majority_class_pruning(&maj, &pool, 1, VarSmoothing::default()).unwrap();
        assert_eq!(out.removed_indices, vec![0]);
        assert_eq!(out.retained_indices, vec![1, 2]);
        assert_eq!(out.retained.len(), 2);
    }

    #[test]
    fn rank_and_drop_with_ties() {
        assert_eq!(rank_ascending(&[0.1, 0.9, 0.5]), vec![0, 2, 1]);
        assert_eq!(rank_ascending(&[0.5, 0.2, 0.5, 0.2]), vec![1, 3, 0, 2]);
    }

    #[test]
    fn zero_k_is_identity() {
        let maj = Dataset::new(1, vec![vec![1.0]], vec![Label::Negative]).unwrap();
        let out = majority_class_pruning(&maj, &maj, 0, VarSmoothing::default()).unwrap();
        assert_eq!(out.retained, maj);
    }

    #[test]
    fn k_too_large() {
        let d = make_gaussian_blobs(5, 3, 2, 1.0, 0).unwrap();
        let p = partition_by_class(&d).unwrap();
        assert!(majority_class_pruning(&p.majority, &d, 5, VarSmoothing::default()).is_err());
    }

    #[test]
    fn retained_entropies_dominate_removed() {
        for seed in 0..20 {
            let d = make_gaussian_blobs(60, 20, 2, 1.5, seed).unwrap();
            let p = partition_by_class(&d).unwrap();
            let out = majority_class_pruning(&p.majority, &d, 15, VarSmoothing::default()).unwrap();
            let e = |i: usize| out.scores[i].entropy;
            let min_kept = out.retained_indices.iter().map(|&i| e(i)).fold(f64::INFINITY, f64::min);
            let max_removed = out
                .removed_indices
                .iter()
                .map(|&i| e(i))
                .fold(f64::NEG_INFINITY, f64::max);
            assert!(min_kept >= max_removed);
        }
    }
}
