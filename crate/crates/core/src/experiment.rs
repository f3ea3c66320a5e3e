//! Replicated train/test experiments, synthetic data generation and
//! overlap comparison: the work behind the command-line tool.
//!
//! Replication `i` uses the seed `mix_seed(base_seed, i)` for its split,
//! its resampling and its training, so results do not depend on how
//! replications are scheduled across threads.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::baselines::{SamplerMethod, SamplerSpec};
use crate::boosting::{
    default_k, fit_boosted_traced, heuristic_tmax, BoostConfig, IterationLog, LearnerKind, Rebalancer,
};
use crate::data::{
    imbalance_ratio, load_csv, make_gaussian_blobs, partition_by_class, save_csv, split_indices, stratified_kfold,
    ClassPartition, Dataset, Label, LabelColumn, SplitIndices, SplitSpec,
};
use crate::error::{invalid, Error, Result};
use crate::metrics::{
    evaluate, overlap_feature_count, summarize_reports, MetricReport, OverlapReport, ReplicationSummary,
};
use crate::pruning::SyntheticSample;
use crate::random::{mix_seed, RandomSource};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "REBALANCE_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    None,
    Smote,
    BorderlineSmote,
    Adasyn,
    TomekLinks,
    RandomUnder,
    Smoteboost,
    Rusboost,
    ReSmoteboost,
}

impl Method {
    pub const ALL: [Method; 9] = [
        Method::None,
        Method::Smote,
        Method::BorderlineSmote,
        Method::Adasyn,
        Method::TomekLinks,
        Method::RandomUnder,
        Method::Smoteboost,
        Method::Rusboost,
        Method::ReSmoteboost,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::None => "none",
            Method::Smote => "smote",
            Method::BorderlineSmote => "borderline_smote",
            Method::Adasyn => "adasyn",
            Method::TomekLinks => "tomek_links",
            Method::RandomUnder => "random_under",
            Method::Smoteboost => "smoteboost",
            Method::Rusboost => "rusboost",
            Method::ReSmoteboost => "re_smoteboost",
        }
    }

    /// The resampler applied once before plain boosting, if any.
    pub fn sampler(self) -> Option<SamplerMethod> {
        match self {
            Method::Smote => Some(SamplerMethod::Smote),
            Method::BorderlineSmote => Some(SamplerMethod::BorderlineSmote),
            Method::Adasyn => Some(SamplerMethod::Adasyn),
            Method::TomekLinks => Some(SamplerMethod::TomekLinks),
            Method::RandomUnder => Some(SamplerMethod::RandomUnder),
            _ => None,
        }
    }

    /// The per-round rebalancer used inside boosting.
    pub fn rebalancer(self) -> Rebalancer {
        match self {
            Method::Smoteboost => Rebalancer::Smote,
            Method::Rusboost => Rebalancer::RandomUnder,
            Method::ReSmoteboost => Rebalancer::DoublePruning,
            _ => Rebalancer::None,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| invalid(format!("unknown method {s:?}")))
    }
}

/// Number of boosting rounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TMax {
    Fixed(usize),
    /// `max(1, ceil((maj - min) / 2k))` on the training split.
    Heuristic,
}

/// Per-round rebalancing amount.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KSpec {
    /// `max(1, round((maj - min) / 20))` on the training split.
    Auto,
    Count(usize),
    /// Fraction of the training majority, rounded, at least 1.
    Fraction(f64),
}

impl FromStr for TMax {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "heuristic" {
            return Ok(TMax::Heuristic);
        }
        match s.parse::<usize>() {
            Ok(t) if t >= 1 => Ok(TMax::Fixed(t)),
            _ => Err(invalid(format!(
                "t-max must be a positive integer or \"heuristic\", got {s:?}"
            ))),
        }
    }
}

impl FromStr for KSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            return Ok(KSpec::Auto);
        }
        if let Ok(k) = s.parse::<usize>() {
            return Ok(KSpec::Count(k));
        }
        match s.parse::<f64>() {
            Ok(f) if f > 0.0 && f < 1.0 => Ok(KSpec::Fraction(f)),
            _ => Err(invalid(format!(
                "k must be a count, a fraction in (0, 1) or \"auto\", got {s:?}"
            ))),
        }
    }
}

impl fmt::Display for TMax {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TMax::Fixed(t) => write!(f, "{t}"),
            TMax::Heuristic => f.write_str("heuristic"),
        }
    }
}

impl fmt::Display for KSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KSpec::Auto => f.write_str("auto"),
            KSpec::Count(k) => write!(f, "{k}"),
            KSpec::Fraction(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Int(u64),
    Float(f64),
    Text(String),
}

impl Serialize for TMax {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TMax::Fixed(t) => ScalarRepr::Int(*t as u64),
            TMax::Heuristic => ScalarRepr::Text("heuristic".into()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TMax {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = match ScalarRepr::deserialize(d)? {
            ScalarRepr::Int(v) => v.to_string(),
            ScalarRepr::Float(v) => v.to_string(),
            ScalarRepr::Text(t) => t,
        };
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for KSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            KSpec::Auto => ScalarRepr::Text("auto".into()),
            KSpec::Count(k) => ScalarRepr::Int(*k as u64),
            KSpec::Fraction(v) => ScalarRepr::Float(*v),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for KSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = match ScalarRepr::deserialize(d)? {
            ScalarRepr::Int(v) => v.to_string(),
            ScalarRepr::Float(v) => v.to_string(),
            ScalarRepr::Text(t) => t,
        };
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Where the samples come from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DataSource {
    Csv {
        path: PathBuf,
        label_column: String,
        positive_label: String,
    },
    Blobs(GenConfig),
}

impl DataSource {
    pub fn load(&self) -> Result<Dataset> {
        match self {
            DataSource::Csv {
                path,
                label_column,
                positive_label,
            } => load_csv(path, &LabelColumn::parse(label_column), positive_label),
            DataSource::Blobs(g) => g.generate(),
        }
    }
}

/// Parameters of [`make_gaussian_blobs`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub n_maj: usize,
    pub n_min: usize,
    pub dim: usize,
    pub sep: f64,
    pub seed: u64,
}

impl GenConfig {
    pub fn generate(&self) -> Result<Dataset> {
        if !(self.sep.is_finite() && self.sep >= 0.0) {
            return Err(invalid("separation must be finite and non-negative"));
        }
        make_gaussian_blobs(self.n_maj, self.n_min, self.dim, self.sep, self.seed)
    }

    /// Writes the blobs as CSV and returns their imbalance ratio.
    pub fn write(&self, path: &Path) -> Result<f64> {
        let data = self.generate()?;
        save_csv(&data, path)?;
        imbalance_ratio(&partition_by_class(&data)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub data: DataSource,
    pub method: Method,
    pub base: LearnerKind,
    pub k: KSpec,
    pub k_neighbors: usize,
    pub t_max: TMax,
    pub test_fraction: f64,
    pub replications: usize,
    pub seed: u64,
    /// Stratified k-fold instead of repeated random splits.
    pub cv_folds: Option<usize>,
    pub stratified: bool,
    /// Start every boosting round from the original training pools.
    pub fresh_pools: bool,
    pub learning_rate: f64,
}

impl ExperimentConfig {
    pub fn new(data: DataSource, method: Method) -> Self {
        Self {
            data,
            method,
            base: LearnerKind::Stump,
            k: KSpec::Auto,
            k_neighbors: 5,
            t_max: TMax::Heuristic,
            test_fraction: 0.2,
            replications: 100,
            seed: 0,
            cv_folds: None,
            stratified: true,
            fresh_pools: false,
            learning_rate: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications < 2 {
            return Err(invalid("replications must be at least 2"));
        }
        if !(self.test_fraction > 0.0 && self.test_fraction < 1.0) {
            return Err(invalid("test fraction must lie in (0, 1)"));
        }
        if self.k_neighbors == 0 {
            return Err(invalid("k-neighbors must be at least 1"));
        }
        if let Some(f) = self.cv_folds {
            if f < 2 {
                return Err(invalid("cv needs at least 2 folds"));
            }
        }
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return Err(invalid("learning rate must be positive"));
        }
        match self.k {
            KSpec::Fraction(f) if !(f > 0.0 && f < 1.0) => return Err(invalid("k fraction must lie in (0, 1)")),
            _ => {}
        }
        match self.base {
            LearnerKind::Knn { k: 0 } => Err(invalid("k-NN base learner needs k >= 1")),
            LearnerKind::Gnb { var_smoothing } if !(var_smoothing >= 0.0 && var_smoothing.is_finite()) => {
                Err(invalid("var_smoothing must be finite and non-negative"))
            }
            _ => Ok(()),
        }
    }

    fn resolve_k(&self, n_maj: usize, n_min: usize) -> usize {
        match self.k {
            KSpec::Auto => default_k(n_maj, n_min),
            KSpec::Count(k) => k,
            KSpec::Fraction(f) => ((f * n_maj as f64).round() as usize).max(1),
        }
    }
}

/// What the rebalancing did in one replication.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResampleAudit {
    pub k: usize,
    pub t_max: usize,
    pub train_majority: usize,
    pub train_minority: usize,
    /// Majority rows removed, over all rounds.
    pub majority_removed: usize,
    /// Synthetic minority rows present after resampling.
    pub synthetics_added: usize,
    /// Accepted candidates per roulette spin, when roulette spins happened.
    pub acceptance_rate: Option<f64>,
    pub noise_filtered: usize,
    pub iterations: Vec<IterationLog>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicationResult {
    pub index: usize,
    pub seed: u64,
    /// Source rows held out for testing, recorded before any resampling.
    pub test_indices: Vec<usize>,
    /// The test rows hashed identically before resampling and after evaluation.
    pub test_untouched: bool,
    pub metrics: MetricReport,
    pub audit: ResampleAudit,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseTiming {
    pub resample_and_train_ms: f64,
    pub evaluate_ms: f64,
}

/// Wall-clock timings, kept apart so that everything else in a report is
/// reproducible byte for byte.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingReport {
    pub load_ms: f64,
    pub total_ms: f64,
    pub replications: Vec<PhaseTiming>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub n_samples: usize,
    pub dimension: usize,
    /// Label of the minority class in the source data; metrics treat it as positive.
    pub minority_label: Label,
    pub imbalance_ratio: f64,
    pub replications: Vec<ReplicationResult>,
    /// Mean and sample standard deviation per metric; empty for a single replication.
    pub summary: Vec<ReplicationSummary>,
    pub timing: TimingReport,
}

impl ExperimentReport {
    pub fn summary_for(&self, name: &str) -> Option<&ReplicationSummary> {
        self.summary.iter().find(|s| s.metric_name == name)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// One row per replication.
    pub fn write_replications_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let mut header = vec!["replication".to_string(), "seed".to_string()];
        for variant in ["positive", "macro"] {
            for name in crate::metrics::METRIC_NAMES {
                header.push(format!("{variant}.{name}"));
            }
        }
        header.extend(["auc", "tp", "fp", "fn", "tn"].map(String::from));
        w.write_record(&header)?;
        for r in &self.replications {
            let m = &r.metrics;
            let mut row = vec![r.index.to_string(), r.seed.to_string()];
            for v in [m.positive, m.macro_avg] {
                for name in crate::metrics::METRIC_NAMES {
                    row.push(v.get(name).unwrap_or(0.0).to_string());
                }
            }
            row.push(m.auc.map(|a| a.to_string()).unwrap_or_default());
            let c = m.confusion;
            row.extend([c.tp, c.fp, c.fn_, c.tn].map(|v| v.to_string()));
            w.write_record(&row)?;
        }
        w.flush().map_err(|e| Error::Csv(e.into()))
    }
}

/// The training set after resampling, with the synthetics it contains.
#[derive(Debug, Clone)]
pub struct Resampled {
    pub data: Dataset,
    pub synthetics: Vec<SyntheticSample>,
}

/// Provenance written next to a dumped training set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResampleProvenance {
    pub method: Method,
    pub replication: usize,
    pub seed: u64,
    pub rows: usize,
    /// Rows from `rows - synthetics.len()` onwards are synthetic.
    pub synthetics: Vec<SyntheticSample>,
    pub audit: ResampleAudit,
}

fn fingerprint(data: &Dataset) -> u64 {
    let mut h = DefaultHasher::new();
    for (x, y) in data.iter() {
        for v in x {
            v.to_bits().hash(&mut h);
        }
        y.hash(&mut h);
    }
    h.finish()
}

fn in_source_labels(partition: &ClassPartition, majority: &Dataset, minority: &Dataset) -> Result<Dataset> {
    majority
        .relabeled(partition.majority_source_label())
        .concat(&minority.relabeled(partition.to_source_label(Label::Positive)))
}

fn split_for(cfg: &ExperimentConfig, data: &Dataset, index: usize, seed: u64) -> Result<SplitIndices> {
    match cfg.cv_folds {
        None => {
            let spec = SplitSpec {
                train_fraction: 1.0 - cfg.test_fraction,
                stratified: cfg.stratified,
                seed,
            };
            split_indices(data, &spec, &mut spec.rng())
        }
        Some(folds) => {
            // Replications walk through repeated k-fold partitions.
            let repeat = (index / folds) as u64;
            let mut rng = RandomSource::new(mix_seed(cfg.seed, u64::MAX - repeat));
            Ok(stratified_kfold(data, folds, &mut rng)?.swap_remove(index % folds))
        }
    }
}

struct Trained {
    ensemble: crate::boosting::BoostedEnsemble<crate::boosting::Learner>,
    resampled: Resampled,
    audit: ResampleAudit,
}

/// Resamples `train` with `cfg.method` and fits the boosted model.
fn train_one(cfg: &ExperimentConfig, train: &Dataset, rng: &mut RandomSource) -> Result<Trained> {
    let partition = partition_by_class(train)?;
    let (n_maj, n_min) = (partition.majority.len(), partition.minority.len());
    let k = cfg.resolve_k(n_maj, n_min);
    let t_max = match cfg.t_max {
        TMax::Fixed(t) => t,
        TMax::Heuristic => heuristic_tmax(n_maj, n_min, k.max(1))?,
    };
    let mut boost = BoostConfig::named(cfg.method.rebalancer(), t_max, k);
    boost.learning_rate = cfg.learning_rate;
    boost.carry_pools = !cfg.fresh_pools;
    boost.pruning.k_neighbors = cfg.k_neighbors;
    let base = cfg.base;

    let mut audit = ResampleAudit {
        k,
        t_max,
        train_majority: n_maj,
        train_minority: n_min,
        majority_removed: 0,
        synthetics_added: 0,
        acceptance_rate: None,
        noise_filtered: 0,
        iterations: Vec::new(),
    };

    let (fit_on, pre_synthetics) = match cfg.method.sampler() {
        Some(method) => {
            let spec = SamplerSpec {
                method,
                k_neighbors: cfg.k_neighbors,
                target_ratio: 1.0,
                seed: rng.seed(),
            };
            let out = spec.apply(&partition, rng)?;
            audit.majority_removed = out.majority_removed.len();
            audit.synthetics_added = out.synthetics.len();
            (
                in_source_labels(&partition, &out.majority, &out.minority)?,
                out.synthetics,
            )
        }
        None => (train.clone(), Vec::new()),
    };
    let trace = fit_boosted_traced(&fit_on, &boost, || base.build(), rng)?;
    let log = &trace.ensemble.training_log;
    audit.iterations = log.clone();
    let resampled = if cfg.method.sampler().is_some() {
        Resampled {
            data: fit_on,
            synthetics: pre_synthetics,
        }
    } else {
        audit.majority_removed = log.iter().map(|l| l.majority_removed).sum();
        audit.synthetics_added = trace.synthetics.len();
        audit.noise_filtered = log.iter().map(|l| l.filtered_out).sum();
        let spins: usize = log.iter().map(|l| l.spins).sum();
        if spins > 0 {
            audit.acceptance_rate = Some(log.iter().map(|l| l.accepted).sum::<usize>() as f64 / spins as f64);
        }
        Resampled {
            data: in_source_labels(&partition, &trace.majority, &trace.minority)?,
            synthetics: trace.synthetics,
        }
    };
    Ok(Trained {
        ensemble: trace.ensemble,
        resampled,
        audit,
    })
}

fn run_replication(
    cfg: &ExperimentConfig,
    data: &Dataset,
    index: usize,
) -> Result<(ReplicationResult, PhaseTiming, Resampled)> {
    let seed = mix_seed(cfg.seed, index as u64);
    let split = split_for(cfg, data, index, seed)?;
    let (train, test) = split.apply(data);
    let before = fingerprint(&test);

    let started = Instant::now();
    let mut rng = RandomSource::new(seed).derive(1);
    let trained = train_one(cfg, &train, &mut rng)?;
    let trained_at = Instant::now();

    let mut predictions = trained.ensemble.predict_all(&test)?;
    let mut scores = trained.ensemble.decision_all(&test)?;
    let mut truth = test.labels().to_vec();
    if trained.ensemble.label_codec.minority == Label::Negative {
        predictions.iter_mut().for_each(|l| *l = l.flip());
        truth.iter_mut().for_each(|l| *l = l.flip());
        scores.iter_mut().for_each(|s| *s = -*s);
    }
    let metrics = evaluate(&predictions, &scores, &truth)?;
    let timing = PhaseTiming {
        resample_and_train_ms: (trained_at - started).as_secs_f64() * 1e3,
        evaluate_ms: trained_at.elapsed().as_secs_f64() * 1e3,
    };
    Ok((
        ReplicationResult {
            index,
            seed,
            test_indices: split.test,
            test_untouched: fingerprint(&test) == before,
            metrics,
            audit: trained.audit,
        },
        timing,
        trained.resampled,
    ))
}

/// Worker count from [`THREADS_ENV`], if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|n: &usize| *n > 0)
}

/// Options that affect output files but not results.
#[derive(Debug, Clone, Default)]
pub struct RunOutputs {
    /// Writes replication 0's resampled training set here, with a
    /// `.provenance.json` sidecar.
    pub dump_resampled: Option<PathBuf>,
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    run_experiment_with(cfg, &RunOutputs::default())
}

pub fn run_experiment_with(cfg: &ExperimentConfig, outputs: &RunOutputs) -> Result<ExperimentReport> {
    cfg.validate()?;
    let started = Instant::now();
    let data = cfg.data.load()?;
    let load_ms = started.elapsed().as_secs_f64() * 1e3;
    let partition = partition_by_class(&data)?;
    let ir = imbalance_ratio(&partition)?;

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_cap() {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| invalid(format!("thread pool: {e}")))?;
    let results: Vec<_> = pool.install(|| {
        (0..cfg.replications)
            .into_par_iter()
            .map(|i| run_replication(cfg, &data, i).map_err(|e| invalid(format!("replication {i}: {e}"))))
            .collect::<Result<Vec<_>>>()
    })?;

    let mut replications = Vec::with_capacity(results.len());
    let mut timings = Vec::with_capacity(results.len());
    for (i, (rep, timing, resampled)) in results.into_iter().enumerate() {
        if i == 0 {
            if let Some(path) = &outputs.dump_resampled {
                dump_resampled(path, cfg, &rep, &resampled)?;
            }
        }
        replications.push(rep);
        timings.push(timing);
    }
    let reports: Vec<MetricReport> = replications.iter().map(|r| r.metrics.clone()).collect();
    let summary = if reports.len() >= 2 {
        summarize_reports(&reports)?
    } else {
        Vec::new()
    };
    Ok(ExperimentReport {
        config: cfg.clone(),
        n_samples: data.len(),
        dimension: data.dimension(),
        minority_label: if partition.swapped {
            Label::Negative
        } else {
            Label::Positive
        },
        imbalance_ratio: ir,
        replications,
        summary,
        timing: TimingReport {
            load_ms,
            total_ms: started.elapsed().as_secs_f64() * 1e3,
            replications: timings,
        },
    })
}

/// Path of the sidecar written next to a dumped training set.
pub fn provenance_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".provenance.json");
    path.with_file_name(name)
}

fn dump_resampled(path: &Path, cfg: &ExperimentConfig, rep: &ReplicationResult, resampled: &Resampled) -> Result<()> {
    save_csv(&resampled.data, path)?;
    let provenance = ResampleProvenance {
        method: cfg.method,
        replication: rep.index,
        seed: rep.seed,
        rows: resampled.data.len(),
        synthetics: resampled.synthetics.clone(),
        audit: rep.audit.clone(),
    };
    let side = provenance_path(path);
    std::fs::write(&side, serde_json::to_string_pretty(&provenance)?).map_err(|source| Error::Io { path: side, source })
}

/// Fisher-ratio comparison of two CSV files with the same columns.
pub fn compare_overlap(a: &Path, b: &Path, label_column: &LabelColumn, positive_label: &str) -> Result<OverlapReport> {
    let da = load_csv(a, label_column, positive_label)?;
    let db = load_csv(b, label_column, positive_label)?;
    overlap_feature_count(&da, &db)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blobs(n_maj: usize, n_min: usize, sep: f64) -> DataSource {
        DataSource::Blobs(GenConfig {
            n_maj,
            n_min,
            dim: 2,
            sep,
            seed: 5,
        })
    }

    fn quick(method: Method) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::new(blobs(120, 30, 2.0), method);
        cfg.replications = 3;
        cfg.seed = 1;
        cfg
    }

    #[test]
    fn parses_cli_values() {
        assert_eq!("heuristic".parse::<TMax>().unwrap(), TMax::Heuristic);
        assert_eq!("7".parse::<TMax>().unwrap(), TMax::Fixed(7));
        assert!("0".parse::<TMax>().is_err());
        assert_eq!("0.1".parse::<KSpec>().unwrap(), KSpec::Fraction(0.1));
        assert_eq!("10".parse::<KSpec>().unwrap(), KSpec::Count(10));
        assert!("1.5".parse::<KSpec>().is_err());
        for m in Method::ALL {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
        }
        assert!("svm".parse::<Method>().is_err());
    }

    #[test]
    fn config_round_trips_through_json() {
        let mut cfg = quick(Method::ReSmoteboost);
        cfg.k = KSpec::Fraction(0.25);
        cfg.t_max = TMax::Fixed(4);
        let json = serde_json::to_string(&cfg).unwrap();
        assert_eq!(serde_json::from_str::<ExperimentConfig>(&json).unwrap(), cfg);
    }

    #[test]
    fn every_method_runs() {
        for m in Method::ALL {
            let report = run_experiment(&quick(m)).unwrap();
            assert_eq!(report.replications.len(), 3);
            assert!(report
                .replications
                .iter()
                .all(|r| r.test_untouched && r.test_indices.len() == 30));
            assert!(report.summary_for("positive.recall").is_some(), "{m}");
        }
    }

    #[test]
    fn replications_are_reproducible() {
        let cfg = quick(Method::ReSmoteboost);
        let a = run_experiment(&cfg).unwrap();
        let b = run_experiment(&cfg).unwrap();
        assert_eq!(a.replications, b.replications);
        assert_eq!(a.summary, b.summary);
    }

    #[test]
    fn fraction_k_scales_with_majority() {
        let mut cfg = quick(Method::Rusboost);
        cfg.k = KSpec::Fraction(0.1);
        let r = run_experiment(&cfg).unwrap();
        assert_eq!(r.replications[0].audit.k, 10);
    }

    #[test]
    fn kfold_walks_through_folds() {
        let mut cfg = quick(Method::None);
        cfg.cv_folds = Some(5);
        cfg.replications = 5;
        let r = run_experiment(&cfg).unwrap();
        let mut all: Vec<usize> = r.replications.iter().flat_map(|x| x.test_indices.clone()).collect();
        all.sort_unstable();
        assert_eq!(all, (0..150).collect::<Vec<_>>());
    }

    #[test]
    fn swapped_labels_still_score_the_minority() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        let d = make_gaussian_blobs(30, 90, 2, 3.0, 2).unwrap();
        save_csv(&d, &path).unwrap();
        let mut cfg = ExperimentConfig::new(
            DataSource::Csv {
                path,
                label_column: "label".into(),
                positive_label: "pos".into(),
            },
            Method::ReSmoteboost,
        );
        cfg.replications = 2;
        let r = run_experiment(&cfg).unwrap();
        assert_eq!(r.minority_label, Label::Negative);
        let cm = r.replications[0].metrics.confusion;
        assert_eq!(cm.tp + cm.fn_, 6);
    }

    #[test]
    fn dump_writes_sidecar() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("resampled.csv");
        let outputs = RunOutputs {
            dump_resampled: Some(path.clone()),
        };
        let report = run_experiment_with(&quick(Method::ReSmoteboost), &outputs).unwrap();
        let dumped = load_csv(&path, &LabelColumn::Name("label".into()), "pos").unwrap();
        let prov: ResampleProvenance =
            serde_json::from_str(&std::fs::read_to_string(provenance_path(&path)).unwrap()).unwrap();
        assert_eq!(prov.rows, dumped.len());
        assert_eq!(prov.synthetics.len(), report.replications[0].audit.synthetics_added);
        let tail = &dumped.features()[dumped.len() - prov.synthetics.len()..];
        for (row, s) in tail.iter().zip(&prov.synthetics) {
            assert_eq!(row, &s.x);
        }
    }

    #[test]
    fn rejects_bad_configs() {
        let mut cfg = quick(Method::None);
        cfg.replications = 0;
        assert!(run_experiment(&cfg).is_err());
        let mut cfg = quick(Method::None);
        cfg.test_fraction = 1.0;
        assert!(cfg.validate().is_err());
        let cfg = ExperimentConfig::new(blobs(10, 0, 1.0), Method::None);
        assert!(run_experiment(&cfg).is_err());
    }
}
