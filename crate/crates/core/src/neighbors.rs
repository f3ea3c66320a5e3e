//! Distances and brute-force neighbour search. Ties go to the lower index.

use serde::{Deserialize, Serialize};

pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    squared_euclidean(a, b).sqrt()
}

pub fn squared_euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub fn manhattan(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

/// Distance used for roulette fitness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    #[default]
    Manhattan,
    Euclidean,
}

impl Metric {
    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            Metric::Manhattan => manhattan(a, b),
            Metric::Euclidean => euclidean(a, b),
        }
    }
}

/// Indices of the `k` points nearest to `query` by Euclidean distance,
/// closest first. `exclude` removes one index (the query itself) from the
/// candidates.
pub fn k_nearest(points: &[Vec<f64>], query: &[f64], k: usize, exclude: Option<usize>) -> Vec<usize> {
    let mut scored: Vec<(f64, usize)> = points
        .iter()
        .enumerate()
        .filter(|&(i, _)| Some(i) != exclude)
        .map(|(i, p)| (squared_euclidean(p, query), i))
        .collect();
    let k = k.min(scored.len());
    if k == 0 {
        return Vec::new();
    }
    let by_distance = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
    if k < scored.len() {
        scored.select_nth_unstable_by(k - 1, by_distance);
        scored.truncate(k);
    }
    scored.sort_unstable_by(by_distance);
    scored.into_iter().map(|(_, i)| i).collect()
}

/// Smallest Euclidean distance from `query` to any of `points`.
pub fn nearest_distance(points: &[Vec<f64>], query: &[f64]) -> f64 {
    points
        .iter()
        .map(|p| squared_euclidean(p, query))
        .fold(f64::INFINITY, f64::min)
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distances() {
        assert_eq!(manhattan(&[0.0, 0.0], &[1.0, 2.0]), 3.0);
        assert_eq!(euclidean(&[0.0, 0.0], &[3.0, 4.0]), 5.0);
        assert_eq!(Metric::Euclidean.distance(&[1.0], &[4.0]), 3.0);
    }

    #[test]
    fn knn_ties_prefer_lower_index() {
        let pts = vec![vec![1.0], vec![-1.0], vec![2.0], vec![0.0]];
        assert_eq!(k_nearest(&pts, &[0.0], 3, Some(3)), vec![0, 1, 2]);
        assert_eq!(k_nearest(&pts, &[0.0], 10, None), vec![3, 0, 1, 2]);
        assert_eq!(k_nearest(&pts, &[0.0], 0, None), Vec::<usize>::new());
    }

    #[test]
    fn knn_matches_full_sort() {
        let pts: Vec<Vec<f64>> = (0..50).map(|i| vec![((i * 37) % 11) as f64, (i % 7) as f64]).collect();
        let q = [3.3, 2.1];
        let mut all: Vec<usize> = (0..pts.len()).collect();
        all.sort_by(|&a, &b| {
            squared_euclidean(&pts[a], &q)
                .total_cmp(&squared_euclidean(&pts[b], &q))
                .then(a.cmp(&b))
        });
        assert_eq!(k_nearest(&pts, &q, 9, None), all[..9].to_vec());
    }

    #[test]
    fn nearest() {
        let pts = vec![vec![3.0, 0.0], vec![0.0, 5.0]];
        assert_eq!(nearest_distance(&pts, &[0.0, 0.0]), 3.0);
    }
}
