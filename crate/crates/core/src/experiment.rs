//! Configuration-driven experiments: independent seeded trials, result
//! tables, summaries and run manifests.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::analysis::rank_sum_test;
use crate::engines::{daga_run, es_run, ga_run, DagaConfig, EsConfig, GaConfig, TrialResult};
use crate::error::{Error, Result};
use crate::ingestion::{write_csv, ResultRow};
use crate::problems::{Problem, ProblemSpec};
use crate::rng::RandomSource;

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "DAGA_WORKERS";

pub const RESULTS_FILE: &str = "results.csv";
pub const SUMMARY_FILE: &str = "summary.csv";
pub const MANIFEST_FILE: &str = "manifest.toml";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Daga,
    Ga,
    Es,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Daga => "daga",
            Algorithm::Ga => "ga",
            Algorithm::Es => "es",
        }
    }
}

fn one() -> usize {
    1
}

/// One experiment: a problem, an algorithm with its parameter block, and
/// the number of seeded trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    pub algorithm: Algorithm,
    #[serde(default = "one")]
    pub trials: usize,
    /// Trial `i` runs with seed `base_seed + i`.
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    pub problem: ProblemSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub daga: Option<DagaConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ga: Option<GaConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub es: Option<EsConfig>,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::config(e.to_string().trim_end().to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Load a config; relative paths inside it resolve against its directory.
    pub fn load(path: &Path) -> Result<(Self, PathBuf)> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(format!("cannot read {}: {e}", path.display())))?;
        let cfg = Self::from_toml(&text)?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((cfg, base))
    }

    /// Hex SHA-256 of the canonical serialization.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.to_toml().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn trial_seed(&self, trial: usize) -> u64 {
        self.base_seed.wrapping_add(trial as u64)
    }

    pub fn seeds(&self) -> Vec<u64> {
        (0..self.trials).map(|t| self.trial_seed(t)).collect()
    }

    /// Every problem with the configuration, not just the first.
    pub fn problems(&self, base: &Path) -> Vec<String> {
        let mut errs = Vec::new();
        if self.trials == 0 {
            errs.push("trials: must be at least 1".to_string());
        }
        let blocks = [
            (Algorithm::Daga, self.daga.is_some()),
            (Algorithm::Ga, self.ga.is_some()),
            (Algorithm::Es, self.es.is_some()),
        ];
        for (alg, present) in blocks {
            if alg == self.algorithm && !present {
                errs.push(format!("[{}]: block required for algorithm {}", alg.name(), alg.name()));
            } else if alg != self.algorithm && present {
                errs.push(format!(
                    "[{}]: block does not match algorithm {}",
                    alg.name(),
                    self.algorithm.name()
                ));
            }
        }
        let problem_errs = self.problem.validate(base);
        // An unusable problem still gets its algorithm block checked, against
        // a small problem of the same kind.
        let problem = if problem_errs.is_empty() {
            match self.problem.build(base, &RandomSource::new(self.base_seed)) {
                Ok(p) => Some(p),
                Err(e) => {
                    errs.push(format!("problem: {e}"));
                    stand_in(&self.problem.name)
                }
            }
        } else {
            errs.extend(problem_errs);
            stand_in(&self.problem.name)
        };
        if let Some(problem) = problem {
            let prefix = format!("[{}] ", self.algorithm.name());
            let algo_errs = match self.algorithm {
                Algorithm::Daga => self.daga.as_ref().map(|c| c.problems(&problem)),
                Algorithm::Ga => self.ga.as_ref().map(|c| c.problems(&problem)),
                Algorithm::Es => self.es.as_ref().map(|c| c.problems(&problem)),
            };
            errs.extend(algo_errs.unwrap_or_default().into_iter().map(|e| format!("{prefix}{e}")));
        }
        errs
    }

    pub fn validate(&self, base: &Path) -> Result<()> {
        let errs = self.problems(base);
        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidConfigs(errs))
        }
    }

    /// Build the problem for trial `trial` and run it.
    pub fn run_trial(&self, base: &Path, trial: usize) -> Result<(Problem, TrialResult)> {
        let rng = RandomSource::new(self.trial_seed(trial));
        let problem = self.problem.build(base, &rng)?;
        let result = match self.algorithm {
            Algorithm::Daga => daga_run(&problem, self.daga.as_ref().expect("validated"), rng)?,
            Algorithm::Ga => ga_run(&problem, self.ga.as_ref().expect("validated"), rng)?,
            Algorithm::Es => es_run(&problem, self.es.as_ref().expect("validated"), rng)?,
        };
        Ok((problem, result))
    }

    pub fn row(&self, problem: &Problem, r: &TrialResult) -> ResultRow {
        ResultRow {
            problem: problem.name().to_string(),
            algorithm: self.algorithm.name().to_string(),
            seed: r.seed,
            best: r.best_objective(problem),
            evals_to_success: r.evals_to_success(),
            success: r.success,
        }
    }
}

fn stand_in(name: &str) -> Option<Problem> {
    match name {
        "sphere" | "rosenbrock" | "rastrigin" => Some(Problem::sphere(2)),
        "maxones" | "hiff" | "royal-road" | "maxsat" | "knapsack" | "pattern" => Some(Problem::maxones(2)),
        _ => None,
    }
}

/// Everything needed to rerun an experiment exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    pub tool_version: String,
    pub config_hash: String,
    pub seeds: Vec<u64>,
    /// Directory that relative instance paths resolve against.
    pub base_dir: PathBuf,
    pub config: ExperimentConfig,
}

impl RunManifest {
    pub fn new(cfg: &ExperimentConfig, base: &Path) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config_hash: cfg.hash(),
            seeds: cfg.seeds(),
            base_dir: std::path::absolute(base).unwrap_or_else(|_| base.to_path_buf()),
            config: cfg.clone(),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("manifest serializes")
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let m: Self = toml::from_str(text).map_err(|e| Error::config(e.to_string().trim_end().to_string()))?;
        if m.config.hash() != m.config_hash {
            return Err(Error::config("manifest config hash does not match its config"));
        }
        if m.seeds != m.config.seeds() {
            return Err(Error::config("manifest seeds do not match base_seed and trials"));
        }
        Ok(m)
    }
}

/// The usual results-table columns for one (problem, algorithm) sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub problem: String,
    pub algorithm: String,
    pub trials: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub std: f64,
    pub mean_evals: f64,
    pub std_evals: f64,
    pub success_rate: f64,
}

fn mean_std(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    if v.len() < 2 {
        return (mean, 0.0);
    }
    let var = v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

impl Summary {
    pub fn from_rows(rows: &[ResultRow]) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| Error::InvalidInput("no result rows to summarise".into()))?;
        if rows.iter().any(|r| r.problem != first.problem || r.algorithm != first.algorithm) {
            return Err(Error::InvalidInput("rows mix problems or algorithms".into()));
        }
        let best: Vec<f64> = rows.iter().map(|r| r.best).collect();
        let evals: Vec<f64> = rows.iter().map(|r| r.evals_to_success as f64).collect();
        let (mean, std) = mean_std(&best);
        let (mean_evals, std_evals) = mean_std(&evals);
        Ok(Self {
            problem: first.problem.clone(),
            algorithm: first.algorithm.clone(),
            trials: rows.len(),
            min: best.iter().copied().fold(f64::INFINITY, f64::min),
            max: best.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            mean,
            std,
            mean_evals,
            std_evals,
            success_rate: rows.iter().filter(|r| r.success).count() as f64 / rows.len() as f64,
        })
    }
}

pub fn write_summary_csv(summaries: &[Summary], out: impl std::io::Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for s in summaries {
        w.serialize(s).map_err(|e| Error::InvalidInput(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutcome {
    pub rows: Vec<ResultRow>,
    pub trials: Vec<TrialResult>,
    pub summary: Summary,
    pub manifest: RunManifest,
}

impl ExperimentOutcome {
    pub fn results_csv(&self) -> Result<Vec<u8>> {
        let mut buf = Vec::new();
        write_csv(&self.rows, &mut buf)?;
        Ok(buf)
    }

    /// Write results, summary and manifest into `dir`.
    pub fn write_to(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(RESULTS_FILE), self.results_csv()?)?;
        let mut summary = Vec::new();
        write_summary_csv(std::slice::from_ref(&self.summary), &mut summary)?;
        std::fs::write(dir.join(SUMMARY_FILE), summary)?;
        std::fs::write(dir.join(MANIFEST_FILE), self.manifest.to_toml())?;
        Ok(())
    }
}

/// Worker count from [`WORKERS_ENV`], else the available parallelism.
pub fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

#[cfg(feature = "parallel")]
fn map_trials<T: Send>(n: usize, workers: usize, f: impl Fn(usize) -> T + Sync + Send) -> Result<Vec<T>> {
    use rayon::prelude::*;
    if workers <= 1 {
        return Ok((0..n).map(f).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::config(format!("cannot start {workers} workers: {e}")))?;
    Ok(pool.install(|| (0..n).into_par_iter().map(f).collect()))
}

#[cfg(not(feature = "parallel"))]
fn map_trials<T: Send>(n: usize, _workers: usize, f: impl Fn(usize) -> T + Sync + Send) -> Result<Vec<T>> {
    Ok((0..n).map(f).collect())
}

/// Run every trial, merging results in trial order regardless of `workers`.
pub fn run_experiment(cfg: &ExperimentConfig, base: &Path, workers: usize) -> Result<ExperimentOutcome> {
    cfg.validate(base)?;
    let outcomes = map_trials(cfg.trials, workers, |t| cfg.run_trial(base, t))?
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<ResultRow> = outcomes.iter().map(|(p, r)| cfg.row(p, r)).collect();
    Ok(ExperimentOutcome {
        summary: Summary::from_rows(&rows)?,
        trials: outcomes.into_iter().map(|(_, r)| r).collect(),
        rows,
        manifest: RunManifest::new(cfg, base),
    })
}

/// Rerun the experiment recorded in a manifest.
pub fn rerun_manifest(manifest: &RunManifest, workers: usize) -> Result<ExperimentOutcome> {
    run_experiment(&manifest.config, &manifest.base_dir, workers)
}

/// Significance of the difference between two result samples.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    pub a: Summary,
    pub b: Summary,
    /// Rank-sum p-value on final best values.
    pub p_best: Option<f64>,
    /// Rank-sum p-value on evaluations to success.
    pub p_evals: Option<f64>,
}

pub const SIGNIFICANCE: f64 = 0.05;

impl CompareReport {
    pub fn best_differs(&self) -> bool {
        self.p_best.is_some_and(|p| p < SIGNIFICANCE)
    }

    pub fn evals_differ(&self) -> bool {
        self.p_evals.is_some_and(|p| p < SIGNIFICANCE)
    }

    pub fn render(&self) -> String {
        let fmt_p = |p: Option<f64>| match p {
            Some(p) if p < SIGNIFICANCE => format!("{p:.4} *"),
            Some(p) => format!("{p:.4}"),
            None => "n/a".to_string(),
        };
        let mut out = format!("problem: {}\n", self.a.problem);
        out.push_str("algorithm\ttrials\tmin\tmax\tmean\tmean evals\tsuccess\n");
        for s in [&self.a, &self.b] {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{:.3} ± {:.3}\t{:.1} ± {:.1}\t{:.0}%\n",
                s.algorithm,
                s.trials,
                s.min,
                s.max,
                s.mean,
                s.std,
                s.mean_evals,
                s.std_evals,
                100.0 * s.success_rate
            ));
        }
        out.push_str(&format!("p (best)\t{}\n", fmt_p(self.p_best)));
        out.push_str(&format!("p (evals)\t{}\n", fmt_p(self.p_evals)));
        out
    }
}

pub fn compare(a: &[ResultRow], b: &[ResultRow]) -> Result<CompareReport> {
    let (sa, sb) = (Summary::from_rows(a)?, Summary::from_rows(b)?);
    if sa.problem != sb.problem {
        return Err(Error::InvalidInput(format!(
            "refusing to compare results for different problems ({} vs {})",
            sa.problem, sb.problem
        )));
    }
    let test = |f: fn(&ResultRow) -> f64| -> Result<Option<f64>> {
        if a.len() < 3 || b.len() < 3 {
            return Ok(None);
        }
        let xa: Vec<f64> = a.iter().map(f).collect();
        let xb: Vec<f64> = b.iter().map(f).collect();
        rank_sum_test(&xa, &xb).map(Some)
    };
    Ok(CompareReport {
        p_best: test(|r| r.best)?,
        p_evals: test(|r| r.evals_to_success as f64)?,
        a: sa,
        b: sb,
    })
}
