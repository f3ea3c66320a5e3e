//! Datasets, class partitions and the imbalance ratio.
//!
//! Minority is the positive class throughout. [`partition_by_class`]
//! relabels when the positives outnumber the negatives so that this holds
//! for every partition.

mod blobs;
mod io;
mod split;

pub use blobs::make_gaussian_blobs;
pub use io::{load_csv, read_csv, save_csv, write_csv, LabelColumn};
pub use split::{split_indices, stratified_kfold, stratified_split, SplitIndices, SplitSpec};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Binary class tag. Positive is the minority by convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    #[serde(rename = "pos")]
    Positive,
    #[serde(rename = "neg")]
    Negative,
}

impl Label {
    /// Signed encoding: positive is `+1`, negative is `-1`.
    pub fn signed(self) -> f64 {
        match self {
            Label::Positive => 1.0,
            Label::Negative => -1.0,
        }
    }

    /// Decodes a margin. Zero maps to negative.
    pub fn from_margin(margin: f64) -> Label {
        if margin > 0.0 {
            Label::Positive
        } else {
            Label::Negative
        }
    }

    pub fn flip(self) -> Label {
        match self {
            Label::Positive => Label::Negative,
            Label::Negative => Label::Positive,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Positive => "pos",
            Label::Negative => "neg",
        }
    }
}

/// Ordered feature vectors with binary labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    dimension: usize,
    features: Vec<Vec<f64>>,
    labels: Vec<Label>,
    pub feature_names: Option<Vec<String>>,
    pub source_tag: String,
}

impl Dataset {
    /// Builds a dataset, checking dimensions and finiteness. Single-class and
    /// empty datasets are allowed; operations that need both classes check
    /// for themselves.
    pub fn new(dimension: usize, features: Vec<Vec<f64>>, labels: Vec<Label>) -> Result<Self> {
        if dimension == 0 {
            return Err(crate::error::invalid("dimension must be at least 1"));
        }
        if features.len() != labels.len() {
            return Err(crate::error::invalid(format!(
                "{} feature rows but {} labels",
                features.len(),
                labels.len()
            )));
        }
        for (i, row) in features.iter().enumerate() {
            if row.len() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    found: row.len(),
                });
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite { sample: i, feature: j });
            }
        }
        Ok(Self {
            dimension,
            features,
            labels,
            feature_names: None,
            source_tag: String::new(),
        })
    }

    /// An empty dataset of the given dimension.
    pub fn empty(dimension: usize) -> Self {
        Self {
            dimension,
            features: Vec::new(),
            labels: Vec::new(),
            feature_names: None,
            source_tag: String::new(),
        }
    }

    pub fn with_source_tag(mut self, tag: impl Into<String>) -> Self {
        self.source_tag = tag.into();
        self
    }

    pub fn with_feature_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: names.len(),
            });
        }
        self.feature_names = Some(names);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn x(&self, i: usize) -> &[f64] {
        &self.features[i]
    }

    pub fn y(&self, i: usize) -> Label {
        self.labels[i]
    }

    pub fn features(&self) -> &[Vec<f64>] {
        &self.features
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[f64], Label)> + '_ {
        self.features.iter().map(Vec::as_slice).zip(self.labels.iter().copied())
    }

    pub fn count(&self, label: Label) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }

    /// Appends a sample, validating it.
    pub fn push(&mut self, x: Vec<f64>, y: Label) -> Result<()> {
        if x.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: x.len(),
            });
        }
        if let Some(j) = x.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                sample: self.len(),
                feature: j,
            });
        }
        self.features.push(x);
        self.labels.push(y);
        Ok(())
    }

    /// Samples at `indices`, in the given order.
    pub fn subset(&self, indices: &[usize]) -> Dataset {
        Dataset {
            dimension: self.dimension,
            features: indices.iter().map(|&i| self.features[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            feature_names: self.feature_names.clone(),
            source_tag: self.source_tag.clone(),
        }
    }

    /// Samples of this dataset followed by those of `other`.
    pub fn concat(&self, other: &Dataset) -> Result<Dataset> {
        if other.dimension != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: other.dimension,
            });
        }
        let mut out = self.clone();
        out.features.extend(other.features.iter().cloned());
        out.labels.extend(other.labels.iter().copied());
        Ok(out)
    }

    /// Copy of this dataset with every label replaced by `label`.
    pub fn relabeled(&self, label: Label) -> Dataset {
        let mut out = self.clone();
        out.labels.iter_mut().for_each(|l| *l = label);
        out
    }

    /// Errors unless both labels are present.
    pub fn require_both_classes(&self) -> Result<()> {
        let pos = self.count(Label::Positive);
        if pos == 0 || pos == self.len() {
            return Err(Error::SingleClass);
        }
        Ok(())
    }

    pub(crate) fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// JSON export: `{ "dimension", "feature_names", "samples": [{ "x", "y" }] }`.
    pub fn to_json(&self) -> Result<String> {
        let doc = DatasetJson {
            dimension: self.dimension,
            feature_names: self.feature_names.clone().unwrap_or_default(),
            samples: self.iter().map(|(x, y)| SampleJson { x: x.to_vec(), y }).collect(),
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    pub fn from_json(text: &str) -> Result<Dataset> {
        let doc: DatasetJson = serde_json::from_str(text)?;
        let (features, labels) = doc.samples.into_iter().map(|s| (s.x, s.y)).unzip();
        let data = Dataset::new(doc.dimension, features, labels)?;
        if doc.feature_names.is_empty() {
            Ok(data)
        } else {
            data.with_feature_names(doc.feature_names)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct DatasetJson {
    dimension: usize,
    #[serde(default)]
    feature_names: Vec<String>,
    samples: Vec<SampleJson>,
}

#[derive(Serialize, Deserialize)]
struct SampleJson {
    x: Vec<f64>,
    y: Label,
}

/// Majority and minority parts of a dataset.
///
/// In the partition the majority is always labelled negative and the
/// minority positive. When the source had more positives than negatives the
/// labels are swapped and `swapped` is set.
#[derive(Debug, Clone)]
pub struct ClassPartition {
    pub majority: Dataset,
    pub minority: Dataset,
    pub swapped: bool,
}

impl ClassPartition {
    /// Builds a partition from already separated classes, relabelling
    /// majority as negative and minority as positive.
    pub fn from_parts(majority: Dataset, minority: Dataset) -> Result<Self> {
        if majority.dimension() != minority.dimension() {
            return Err(Error::DimensionMismatch {
                expected: majority.dimension(),
                found: minority.dimension(),
            });
        }
        Ok(Self {
            majority: majority.relabeled(Label::Negative),
            minority: minority.relabeled(Label::Positive),
            swapped: false,
        })
    }

    /// Label of the majority class in the source dataset.
    pub fn majority_source_label(&self) -> Label {
        if self.swapped {
            Label::Positive
        } else {
            Label::Negative
        }
    }

    /// Maps a label in partition space back to the source dataset's labels.
    pub fn to_source_label(&self, label: Label) -> Label {
        if self.swapped {
            label.flip()
        } else {
            label
        }
    }

    /// Majority followed by minority, in partition labels.
    pub fn union(&self) -> Dataset {
        let mut out = self.majority.clone();
        out.features.extend(self.minority.features.iter().cloned());
        out.labels.extend(self.minority.labels.iter().copied());
        out
    }
}

/// Splits a dataset into its negative (majority) and positive (minority)
/// samples. If positives outnumber negatives the roles swap, the swapped
/// part is relabelled and the swap is recorded in `source_tag`.
pub fn partition_by_class(data: &Dataset) -> Result<ClassPartition> {
    data.require_both_classes()?;
    let pos: Vec<usize> = (0..data.len()).filter(|&i| data.y(i) == Label::Positive).collect();
    let neg: Vec<usize> = (0..data.len()).filter(|&i| data.y(i) == Label::Negative).collect();
    let swapped = pos.len() > neg.len();
    let (maj, min) = if swapped { (pos, neg) } else { (neg, pos) };
    let mut majority = data.subset(&maj).relabeled(Label::Negative);
    let mut minority = data.subset(&min).relabeled(Label::Positive);
    if swapped {
        let tag = if data.source_tag.is_empty() {
            "labels-swapped".to_string()
        } else {
            format!("{};labels-swapped", data.source_tag)
        };
        majority.source_tag = tag.clone();
        minority.source_tag = tag;
    }
    Ok(ClassPartition {
        majority,
        minority,
        swapped,
    })
}

/// `|majority| / |minority|`.
pub fn imbalance_ratio(partition: &ClassPartition) -> Result<f64> {
    if partition.minority.is_empty() {
        return Err(Error::EmptyClass("minority"));
    }
    Ok(partition.majority.len() as f64 / partition.minority.len() as f64)
}
