use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{
    box_pattern, cross_pattern, make_combined_patterns, masked, BitMask, PatternTarget, Problem, RosenbrockForm,
};
use crate::error::{Error, Result};
use crate::ingestion;
use crate::rng::RandomSource;

/// Stream label used to draw a trial's bit mask from the trial seed.
const MASK_STREAM: u64 = 0x6d61_736b;

/// Serializable description of a problem, as it appears in experiment configs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    /// One of `maxones`, `hiff`, `royal-road`, `maxsat`, `knapsack`,
    /// `pattern`, `sphere`, `rosenbrock`, `rastrigin`.
    pub name: String,
    /// Bit length or dimension.
    #[serde(default)]
    pub size: Option<usize>,
    /// Instance file for `maxsat` (DIMACS) and `knapsack`, pattern file for `pattern`.
    #[serde(default)]
    pub instance: Option<PathBuf>,
    /// XOR every genome with a random mask fixed per trial.
    #[serde(default)]
    pub masked: bool,
    /// Minimisation target overriding the default for continuous problems.
    #[serde(default)]
    pub target: Option<f64>,
    /// Optimum overriding the instance's own value.
    #[serde(default)]
    pub optimum: Option<f64>,
    #[serde(default)]
    pub rosenbrock_form: RosenbrockForm,
    /// Pattern name: `box`, `cross`, a name from the pattern file, or
    /// `<first>-<second>-<4-bit mask>` for a quadrant splice.
    #[serde(default)]
    pub pattern: Option<String>,
}

impl ProblemSpec {
    pub fn named(name: &str, size: usize) -> Self {
        Self {
            name: name.to_string(),
            size: Some(size),
            instance: None,
            masked: false,
            target: None,
            optimum: None,
            rosenbrock_form: RosenbrockForm::Standard,
            pattern: None,
        }
    }

    /// Every problem with this spec, not just the first.
    pub fn validate(&self, base: &Path) -> Vec<String> {
        let mut errs = Vec::new();
        let needs_size = matches!(
            self.name.as_str(),
            "maxones" | "hiff" | "royal-road" | "sphere" | "rosenbrock" | "rastrigin"
        );
        let needs_instance = matches!(self.name.as_str(), "maxsat" | "knapsack");
        match self.name.as_str() {
            "maxones" | "hiff" | "royal-road" | "maxsat" | "knapsack" | "pattern" | "sphere" | "rosenbrock"
            | "rastrigin" => {}
            other => errs.push(format!("problem.name: unknown problem {other:?}")),
        }
        if needs_size && self.size.unwrap_or(0) == 0 {
            errs.push(format!("problem.size: required and positive for {}", self.name));
        }
        if let Some(n) = self.size {
            if self.name == "hiff" && !n.is_power_of_two() {
                errs.push(format!("problem.size: HIFF length {n} is not a power of two"));
            }
            if self.name == "royal-road" && n % super::ROYAL_ROAD_BLOCK != 0 {
                errs.push(format!("problem.size: Royal Road length {n} is not a multiple of 8"));
            }
        }
        if needs_instance && self.instance.is_none() {
            errs.push(format!("problem.instance: required for {}", self.name));
        }
        if let Some(path) = &self.instance {
            let p = resolve(base, path);
            if !p.exists() {
                errs.push(format!("problem.instance: {} does not exist", p.display()));
            }
        }
        if self.name == "pattern" && self.pattern.is_none() {
            errs.push("problem.pattern: required for pattern problems".into());
        }
        let continuous = matches!(self.name.as_str(), "sphere" | "rosenbrock" | "rastrigin");
        if self.masked && continuous {
            errs.push("problem.masked: masks apply to binary problems only".into());
        }
        errs
    }

    /// Build the problem for one trial; masks are drawn from `trial_rng`'s seed.
    pub fn build(&self, base: &Path, trial_rng: &RandomSource) -> Result<Problem> {
        let errs = self.validate(base);
        if !errs.is_empty() {
            return Err(Error::InvalidConfigs(errs));
        }
        let size = self.size.unwrap_or(0);
        let mut problem = match self.name.as_str() {
            "maxones" => Problem::maxones(size),
            "hiff" => Problem::hiff(size)?,
            "royal-road" => Problem::royal_road(size)?,
            "maxsat" => {
                let text = std::fs::read_to_string(resolve(base, self.instance.as_ref().expect("validated")))?;
                Problem::maxsat(ingestion::parse_dimacs(&text)?)
            }
            "knapsack" => {
                let text = std::fs::read_to_string(resolve(base, self.instance.as_ref().expect("validated")))?;
                Problem::knapsack(ingestion::parse_knapsack(&text)?)
            }
            "pattern" => {
                let library = match &self.instance {
                    Some(path) => ingestion::parse_patterns(&std::fs::read_to_string(resolve(base, path))?)?,
                    None => vec![box_pattern(), cross_pattern()],
                };
                Problem::pattern(lookup_pattern(&library, self.pattern.as_deref().expect("validated"))?)
            }
            "sphere" => Problem::sphere(size),
            "rosenbrock" => Problem::rosenbrock(size, self.rosenbrock_form),
            "rastrigin" => Problem::rastrigin(size),
            _ => unreachable!("validated"),
        };
        if let Some(t) = self.target {
            problem = problem.with_target(t);
        }
        if let Some(o) = self.optimum {
            problem = problem.with_optimum(o);
        }
        if self.masked {
            let mut mask_rng = trial_rng.fork(MASK_STREAM);
            let mask = BitMask::random(problem.schema().len(), &mut mask_rng);
            problem = masked(&problem, mask)?;
        }
        Ok(problem)
    }
}

fn resolve(base: &Path, path: &Path) -> PathBuf {
    if path.is_absolute() {
        path.to_path_buf()
    } else {
        base.join(path)
    }
}

/// Find a pattern by name, or build a `<first>-<second>-<mask>` splice.
pub fn lookup_pattern(library: &[PatternTarget], name: &str) -> Result<PatternTarget> {
    if let Some(p) = library.iter().find(|p| p.name == name) {
        return Ok(p.clone());
    }
    let parts: Vec<&str> = name.rsplitn(2, '-').collect();
    if let [mask, rest] = parts[..] {
        if let (Ok(m), Some((a, b))) = (u8::from_str_radix(mask, 2), rest.split_once('-')) {
            let first = library.iter().find(|p| p.name == a);
            let second = library.iter().find(|p| p.name == b);
            if let (Some(first), Some(second), true) = (first, second, mask.len() == 4) {
                return Ok(make_combined_patterns(first, second)[m as usize].clone());
            }
        }
    }
    Err(Error::config(format!("unknown pattern {name:?}")))
}
