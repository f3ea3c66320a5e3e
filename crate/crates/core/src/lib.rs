//! Entropy-guided double pruning for imbalanced binary classification.
//!
//! The crate rebalances a training set from both sides at once: majority
//! samples that a Gaussian naive-Bayes model is confident about are
//! dropped, and synthetic minority samples are interpolated from seeds
//! picked by a distance-weighted roulette wheel, kept only when they sit
//! closer to their seed than to the majority class, and finally filtered by
//! posterior entropy. Run inside AdaBoost this is `re_smoteboost`.
//!
//! Module map:
//!
//! - [`data`]: datasets, CSV/JSON I/O, stratified splits, synthetic blobs
//! - [`entropy`]: naive-Bayes posteriors and Shannon entropy
//! - [`pruning`]: majority/minority pruning and the roulette wheel
//! - [`baselines`]: SMOTE, Borderline-SMOTE, ADASYN, Tomek links, random undersampling
//! - [`boosting`]: weighted AdaBoost with pluggable rebalancing and weak learners
//! - [`metrics`]: confusion metrics, ROC/PR, replication statistics, Fisher overlap
//! - [`experiment`]: the replicated train/test harness behind the CLI
//!
//! ```
//! use resmoteboost::boosting::{fit_boosted, BoostConfig, LearnerKind, Rebalancer};
//! use resmoteboost::data::make_gaussian_blobs;
//! use resmoteboost::random::RandomSource;
//!
//! let data = make_gaussian_blobs(200, 40, 2, 2.0, 7).unwrap();
//! let cfg = BoostConfig::named(Rebalancer::DoublePruning, 10, 5);
//! let model = fit_boosted(&data, &cfg, || LearnerKind::Stump.build(), &mut RandomSource::new(1)).unwrap();
//! let label = model.predict(&[2.0, 0.0]).unwrap();
//! # let _ = label;
//! ```

pub mod baselines;
pub mod boosting;
pub mod data;
pub mod entropy;
pub mod error;
pub mod experiment;
pub mod metrics;
pub mod neighbors;
pub mod pruning;
pub mod random;
mod serde_float;

pub use error::{Error, Result};
