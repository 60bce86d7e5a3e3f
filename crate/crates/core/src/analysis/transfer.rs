use rand::Rng;

use super::rank_sum_test;
use crate::autoencoder::DenoisingAutoencoder;
use crate::engines::{DagaConfig, DagaEngine, TrialResult};
use crate::error::{Error, Result};
use crate::problems::{PatternTarget, Problem};
use crate::rng::RandomSource;

/// Random inputs shown to the decoder at each stage.
pub const DUMP_INPUTS: usize = 18;

const NET_STREAM: u64 = 1;
const STAGE_STREAM: u64 = 10;
const DUMP_STREAM: u64 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Untrained,
    First,
    Second,
    Third,
}

impl Stage {
    pub fn label(self) -> &'static str {
        match self {
            Stage::Untrained => "untrained",
            Stage::First => "first",
            Stage::Second => "second",
            Stage::Third => "third",
        }
    }
}

/// Parameters for the pattern transfer task: generational replacement and
/// per-example updates at a small learning rate.
pub fn transfer_config() -> DagaConfig {
    DagaConfig {
        population: 1000,
        trunc_percent: 20.0,
        epochs: 10,
        learning_rate: 1e-4,
        corruption_rate: 0.1,
        hidden_size: 70,
        niching: None,
        max_evaluations: 200_000,
        minibatch_size: 1,
        ..DagaConfig::default()
    }
}

/// Decoder outputs for the fixed random inputs of one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct DecoderDump {
    pub trial: usize,
    pub stage: Stage,
    pub outputs: Vec<Vec<f64>>,
}

/// Pretrained versus fresh generations on the third pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct SpeedupRecord {
    pub first: String,
    pub second: String,
    pub third_pattern: String,
    pub trials: usize,
    pub fresh_iterations: Vec<usize>,
    pub pretrained_iterations: Vec<usize>,
    pub fresh_evaluations: Vec<u64>,
    pub pretrained_evaluations: Vec<u64>,
    pub fresh_solved: usize,
    pub pretrained_solved: usize,
    pub mean_iterations_fresh: f64,
    pub mean_iterations_pretrained: f64,
    /// `mean_iterations_fresh - mean_iterations_pretrained`.
    pub speedup: f64,
    /// Rank-sum p-value of the two iteration samples, when both have at least 3 trials.
    pub p_value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransferOutcome {
    pub record: SpeedupRecord,
    pub dumps: Vec<DecoderDump>,
}

fn mean<T: Copy + Into<f64>>(v: &[T]) -> f64 {
    v.iter().map(|&x| x.into()).sum::<f64>() / v.len() as f64
}

fn dump(dae: &DenoisingAutoencoder, inputs: &[Vec<f64>], trial: usize, stage: Stage) -> Result<DecoderDump> {
    Ok(DecoderDump {
        trial,
        stage,
        outputs: inputs.iter().map(|x| dae.reconstruct(x)).collect::<Result<_>>()?,
    })
}

struct TrialOutcome {
    fresh: TrialResult,
    pretrained: TrialResult,
    dumps: Vec<DecoderDump>,
}

fn transfer_trial(problems: &[Problem; 3], cfg: &DagaConfig, trial: usize, seed: u64) -> Result<TrialOutcome> {
    let root = RandomSource::new(seed);
    let dim = problems[0].schema().len();
    let mut dump_rng = root.fork(DUMP_STREAM);
    let inputs: Vec<Vec<f64>> = (0..DUMP_INPUTS)
        .map(|_| (0..dim).map(|_| dump_rng.random_bool(0.5) as u8 as f64).collect())
        .collect();

    let mut net = DenoisingAutoencoder::new(dim, cfg.hidden_size, &mut root.fork(NET_STREAM))?;
    let mut dumps = vec![dump(&net, &inputs, trial, Stage::Untrained)?];
    for (i, stage) in [Stage::First, Stage::Second].into_iter().enumerate() {
        let engine = DagaEngine::with_network(&problems[i], cfg, net, root.fork(STAGE_STREAM + i as u64))?;
        net = engine.run()?.1;
        dumps.push(dump(&net, &inputs, trial, stage)?);
    }

    // Both third-stage runs start from the same stream; the pretrained run
    // discards the network draw so its population and sampling match.
    let third_rng = root.fork(STAGE_STREAM + 2);
    let mut skip = third_rng.clone();
    DenoisingAutoencoder::new(dim, cfg.hidden_size, &mut skip)?;
    let (pretrained, net) = DagaEngine::with_network(&problems[2], cfg, net, skip)?.run()?;
    dumps.push(dump(&net, &inputs, trial, Stage::Third)?);
    let (fresh, _) = DagaEngine::new(&problems[2], cfg, third_rng)?.run()?;
    Ok(TrialOutcome { fresh, pretrained, dumps })
}

/// Solve `sequence[0]`, then `sequence[1]` with the same weights, then
/// `sequence[2]`; compare the generations needed on the third pattern
/// against a fresh network. Trial `t` uses seed `base_seed + t`.
pub fn transfer_experiment(
    sequence: &[PatternTarget; 3],
    cfg: &DagaConfig,
    trials: usize,
    base_seed: u64,
) -> Result<TransferOutcome> {
    if trials == 0 {
        return Err(Error::config("transfer experiment needs at least one trial"));
    }
    let problems = sequence.clone().map(Problem::pattern);
    cfg.validate(&problems[0])?;
    let outcomes = (0..trials)
        .map(|t| transfer_trial(&problems, cfg, t, base_seed.wrapping_add(t as u64)))
        .collect::<Result<Vec<_>>>()?;

    let fresh_iterations: Vec<usize> = outcomes.iter().map(|o| o.fresh.generations).collect();
    let pretrained_iterations: Vec<usize> = outcomes.iter().map(|o| o.pretrained.generations).collect();
    let as_f64 = |v: &[usize]| v.iter().map(|&x| x as f64).collect::<Vec<_>>();
    let p_value = (trials >= 3)
        .then(|| rank_sum_test(&as_f64(&fresh_iterations), &as_f64(&pretrained_iterations)))
        .transpose()?;
    let mean_fresh = mean(&as_f64(&fresh_iterations));
    let mean_pre = mean(&as_f64(&pretrained_iterations));
    let record = SpeedupRecord {
        first: sequence[0].name.clone(),
        second: sequence[1].name.clone(),
        third_pattern: sequence[2].name.clone(),
        trials,
        fresh_evaluations: outcomes.iter().map(|o| o.fresh.evaluations).collect(),
        pretrained_evaluations: outcomes.iter().map(|o| o.pretrained.evaluations).collect(),
        fresh_solved: outcomes.iter().filter(|o| o.fresh.success).count(),
        pretrained_solved: outcomes.iter().filter(|o| o.pretrained.success).count(),
        fresh_iterations,
        pretrained_iterations,
        mean_iterations_fresh: mean_fresh,
        mean_iterations_pretrained: mean_pre,
        speedup: mean_fresh - mean_pre,
        p_value,
    };
    Ok(TransferOutcome {
        record,
        dumps: outcomes.into_iter().flat_map(|o| o.dumps).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::daga_run;
    use crate::problems::{box_pattern, cross_pattern};

    fn quick() -> DagaConfig {
        DagaConfig {
            population: 100,
            trunc_percent: 20.0,
            epochs: 2,
            learning_rate: 0.1,
            corruption_rate: 0.1,
            hidden_size: 20,
            max_evaluations: 1500,
            ..DagaConfig::default()
        }
    }

    #[test]
    fn outcome_shape() {
        let seq = [cross_pattern(), box_pattern(), box_pattern()];
        let out = transfer_experiment(&seq, &quick(), 2, 7).unwrap();
        assert_eq!(out.record.trials, 2);
        assert_eq!(out.record.pretrained_iterations.len(), 2);
        assert_eq!(out.record.p_value, None);
        assert_eq!(out.dumps.len(), 8);
        assert!(out.dumps.iter().all(|d| d.outputs.len() == DUMP_INPUTS && d.outputs[0].len() == 81));
        assert_eq!(
            out.record.speedup,
            out.record.mean_iterations_fresh - out.record.mean_iterations_pretrained
        );
    }

    #[test]
    fn fresh_baseline_is_a_plain_run() {
        let seq = [cross_pattern(), box_pattern(), cross_pattern()];
        let cfg = quick();
        let out = transfer_experiment(&seq, &cfg, 1, 40).unwrap();
        let plain = daga_run(
            &Problem::pattern(cross_pattern()),
            &cfg,
            RandomSource::new(40).fork(STAGE_STREAM + 2),
        )
        .unwrap();
        assert_eq!(out.record.fresh_iterations, vec![plain.generations]);
        assert_eq!(out.record.fresh_evaluations, vec![plain.evaluations]);
    }

    #[test]
    fn zero_trials_rejected() {
        let seq = [cross_pattern(), box_pattern(), box_pattern()];
        assert!(transfer_experiment(&seq, &quick(), 0, 1).is_err());
    }
}
