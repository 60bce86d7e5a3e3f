//! Browser bindings: Fig-1-style transition heatmap, corruption histogram and
//! a stepwise DAGA run on the 9x9 pattern task.

use daga::analysis::{build_transition_matrix, sweep_distances, transfer_config, StructureDemo, SweepConfig};
use daga::engines::DagaEngine;
use daga::problems::{box_pattern, cross_pattern, lookup_pattern, PatternTarget, PATTERN_SIDE};
use daga::{Genome, Problem, RandomSource};
use wasm_bindgen::prelude::*;

fn js_err(e: daga::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Transition probabilities of a 6-bit network trained on 000000, 000111, 111111.
#[wasm_bindgen]
pub struct Heatmap {
    size: usize,
    entries: Vec<f64>,
    marginal: Vec<f64>,
    top: Vec<u32>,
}

#[wasm_bindgen]
impl Heatmap {
    #[wasm_bindgen(constructor)]
    pub fn new(seed: u32, epochs: usize, corruption_rate: f64) -> Result<Heatmap, JsError> {
        let demo = StructureDemo {
            epochs,
            corruption_rate,
            ..StructureDemo::default()
        };
        let net = demo.train(&mut RandomSource::new(seed.into())).map_err(js_err)?;
        let m = build_transition_matrix(&net).map_err(js_err)?;
        let size = m.size();
        Ok(Heatmap {
            size,
            entries: (0..size).flat_map(|i| m.row(i).to_vec()).collect(),
            marginal: m.marginal().to_vec(),
            top: m.top_marginal(3).into_iter().map(|i| i as u32).collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Row-major `size x size` matrix; row = input genome, column = output.
    pub fn entries(&self) -> Vec<f64> {
        self.entries.clone()
    }

    pub fn marginal(&self) -> Vec<f64> {
        self.marginal.clone()
    }

    /// Indices of the three most probable output genomes.
    pub fn top(&self) -> Vec<u32> {
        self.top.clone()
    }
}

/// Histogram of offspring distances to the 20-bit MaxOnes optimum after
/// training at `rate`; entry `d` counts samples at distance `d`.
#[wasm_bindgen]
pub fn corruption_histogram(rate: f64, seed: u32) -> Result<Vec<u32>, JsError> {
    let cfg = SweepConfig::default();
    let mut hist = vec![0u32; cfg.bits + 1];
    for d in sweep_distances(rate, seed.into(), &cfg).map_err(js_err)? {
        hist[d] += 1;
    }
    Ok(hist)
}

fn pattern_engine(pattern: &str, seed: u64, population: usize) -> daga::Result<(PatternTarget, DagaEngine)> {
    let target = lookup_pattern(&[box_pattern(), cross_pattern()], pattern)?;
    let cfg = daga::engines::DagaConfig {
        population,
        ..transfer_config()
    };
    let engine = DagaEngine::new(&Problem::pattern(target.clone()), &cfg, RandomSource::new(seed))?;
    Ok((target, engine))
}

/// DAGA on a 9x9 target pattern, advanced one generation at a time.
#[wasm_bindgen]
pub struct PatternRun {
    target: PatternTarget,
    engine: DagaEngine,
}

#[wasm_bindgen]
impl PatternRun {
    /// `pattern` is `box`, `cross` or a quadrant splice such as `box-cross-0011`.
    #[wasm_bindgen(constructor)]
    pub fn new(pattern: &str, seed: u32, population: usize) -> Result<PatternRun, JsError> {
        let (target, engine) = pattern_engine(pattern, seed.into(), population).map_err(js_err)?;
        Ok(PatternRun { target, engine })
    }

    pub fn side() -> usize {
        PATTERN_SIDE
    }

    /// Run one generation; returns the best fitness so far.
    pub fn step(&mut self) -> Result<f64, JsError> {
        if !self.engine.done() {
            self.engine.step().map_err(js_err)?;
        }
        Ok(self.engine.best().fitness)
    }

    pub fn done(&self) -> bool {
        self.engine.done()
    }

    pub fn generation(&self) -> usize {
        self.engine.generation()
    }

    pub fn evaluations(&self) -> f64 {
        self.engine.evaluations() as f64
    }

    pub fn target(&self) -> Vec<u8> {
        self.target.pixels.iter().map(|&b| b as u8).collect()
    }

    /// Best genome so far as 0/1 pixels, row-major.
    pub fn best(&self) -> Vec<u8> {
        match &self.engine.best().genome {
            Genome::Binary(bits) => bits.iter().map(|&b| b as u8).collect(),
            Genome::Continuous(_) => Vec::new(),
        }
    }

    /// Network reconstruction of the best genome, one probability per pixel.
    pub fn reconstruction(&self) -> Result<Vec<f64>, JsError> {
        let x: Vec<f64> = self.best().iter().map(|&b| b as f64).collect();
        self.engine.network().reconstruct(&x).map_err(js_err)
    }
}
