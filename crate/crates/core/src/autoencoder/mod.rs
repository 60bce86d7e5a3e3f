//! Single-hidden-layer denoising autoencoder.
//!
//! Encoder `h = sigmoid(W x + b)`, decoder `z = sigmoid(W' h + b')`, untied
//! weights. Training is plain SGD on the reconstruction loss between the
//! decoding of a corrupted input and the clean input.

mod persist;

pub use persist::{load_weights, read_weights, save_weights, write_weights, WEIGHTS_MAGIC, WEIGHTS_VERSION};

use rand::seq::{index, SliceRandom};
use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::rng::RandomSource;

/// Decoder outputs are kept this far away from 0 and 1 so they are always
/// valid Bernoulli parameters.
pub const OUTPUT_MARGIN: f64 = 1e-15;

#[inline]
pub(crate) fn sigmoid(a: f64) -> f64 {
    1.0 / (1.0 + (-a).exp())
}

/// `ln(1 + e^a)` without overflow.
#[inline]
fn softplus(a: f64) -> f64 {
    if a > 0.0 {
        a + (-a).exp().ln_1p()
    } else {
        a.exp().ln_1p()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Loss {
    /// Per-component binary cross-entropy; used for bit-string problems.
    CrossEntropy,
    /// Per-component `(z - x)^2 / 2`; used for continuous problems in scaled space.
    SquaredError,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorruptionKind {
    /// Flip exactly `round(rate * n)` distinct positions.
    BitFlip,
    /// Add `N(0, rate^2)` to every component, then clamp to `[0, 1]`.
    GaussianJitter,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorruptionSpec {
    pub rate: f64,
    pub kind: CorruptionKind,
}

impl CorruptionSpec {
    pub fn bit_flip(rate: f64) -> Self {
        Self {
            rate,
            kind: CorruptionKind::BitFlip,
        }
    }

    pub fn gaussian(rate: f64) -> Self {
        Self {
            rate,
            kind: CorruptionKind::GaussianJitter,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.rate) {
            return Err(Error::config(format!("corruption rate {} outside [0, 1]", self.rate)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainConfig {
    pub epochs: usize,
    pub learning_rate: f64,
    pub corruption: CorruptionSpec,
    /// Examples per SGD step; `None` uses the whole batch.
    pub minibatch_size: Option<usize>,
    pub loss: Loss,
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        self.corruption.validate()?;
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::config(format!("learning rate {} must be positive", self.learning_rate)));
        }
        if self.minibatch_size == Some(0) {
            return Err(Error::config("minibatch size must be at least 1"));
        }
        Ok(())
    }
}

/// Corrupt a vector whose components lie in `[0, 1]`.
pub fn corrupt(x: &[f64], spec: &CorruptionSpec, rng: &mut RandomSource) -> Result<Vec<f64>> {
    spec.validate()?;
    let mut out = x.to_vec();
    corrupt_in_place(&mut out, spec, rng);
    Ok(out)
}

fn corrupt_in_place(x: &mut [f64], spec: &CorruptionSpec, rng: &mut RandomSource) {
    if spec.rate == 0.0 {
        return;
    }
    match spec.kind {
        CorruptionKind::BitFlip => {
            let n = x.len();
            let k = ((spec.rate * n as f64).round() as usize).min(n);
            if k == n {
                x.iter_mut().for_each(|v| *v = 1.0 - *v);
            } else {
                for i in index::sample(rng, n, k) {
                    x[i] = 1.0 - x[i];
                }
            }
        }
        CorruptionKind::GaussianJitter => {
            let noise = Normal::new(0.0, spec.rate).expect("rate validated");
            for v in x.iter_mut() {
                *v = (*v + noise.sample(rng)).clamp(0.0, 1.0);
            }
        }
    }
}

/// Weights and biases. Also used to hold gradients of the same shape.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    /// `hidden x visible`, row-major.
    pub w: Vec<f64>,
    pub b: Vec<f64>,
    /// `visible x hidden`, row-major.
    pub w_prime: Vec<f64>,
    pub b_prime: Vec<f64>,
}

impl Params {
    fn zeros(visible: usize, hidden: usize) -> Self {
        Self {
            w: vec![0.0; hidden * visible],
            b: vec![0.0; hidden],
            w_prime: vec![0.0; visible * hidden],
            b_prime: vec![0.0; visible],
        }
    }

    fn fill_zero(&mut self) {
        for v in self.iter_mut() {
            *v = 0.0;
        }
    }

    pub fn len(&self) -> usize {
        self.w.len() + self.b.len() + self.w_prime.len() + self.b_prime.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All parameters in file order: `W, b, W', b'`.
    pub fn iter(&self) -> impl Iterator<Item = &f64> {
        self.w.iter().chain(&self.b).chain(&self.w_prime).chain(&self.b_prime)
    }

    pub fn iter_mut(&mut self) -> impl Iterator<Item = &mut f64> {
        self.w
            .iter_mut()
            .chain(self.b.iter_mut())
            .chain(self.w_prime.iter_mut())
            .chain(self.b_prime.iter_mut())
    }

    fn axpy(&mut self, alpha: f64, other: &Params) {
        for (p, g) in self.iter_mut().zip(other.iter()) {
            *p += alpha * g;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenoisingAutoencoder {
    visible: usize,
    hidden: usize,
    params: Params,
}

/// Per-example buffers reused across a training call.
struct Scratch {
    input: Vec<f64>,
    h: Vec<f64>,
    z: Vec<f64>,
    dz: Vec<f64>,
    dh: Vec<f64>,
}

impl Scratch {
    fn new(visible: usize, hidden: usize) -> Self {
        Self {
            input: vec![0.0; visible],
            h: vec![0.0; hidden],
            z: vec![0.0; visible],
            dz: vec![0.0; visible],
            dh: vec![0.0; hidden],
        }
    }
}

impl DenoisingAutoencoder {
    /// Random weights uniform in `±1/sqrt(fan_in)`, zero biases.
    pub fn new(visible: usize, hidden: usize, rng: &mut RandomSource) -> Result<Self> {
        let mut dae = Self::zeros(visible, hidden)?;
        let enc = 1.0 / (visible as f64).sqrt();
        let dec = 1.0 / (hidden as f64).sqrt();
        for v in dae.params.w.iter_mut() {
            *v = rng.random_range(-enc..=enc);
        }
        for v in dae.params.w_prime.iter_mut() {
            *v = rng.random_range(-dec..=dec);
        }
        Ok(dae)
    }

    pub fn zeros(visible: usize, hidden: usize) -> Result<Self> {
        if visible == 0 || hidden == 0 {
            return Err(Error::config(format!(
                "autoencoder sizes must be positive (visible {visible}, hidden {hidden})"
            )));
        }
        Ok(Self {
            visible,
            hidden,
            params: Params::zeros(visible, hidden),
        })
    }

    pub fn from_params(visible: usize, hidden: usize, params: Params) -> Result<Self> {
        let dae = Self::zeros(visible, hidden)?;
        let expect = dae.params.len();
        if params.w.len() != hidden * visible
            || params.b.len() != hidden
            || params.w_prime.len() != visible * hidden
            || params.b_prime.len() != visible
        {
            return Err(Error::type_mismatch(format!(
                "parameter shapes do not match a {visible}x{hidden} autoencoder ({expect} values expected)"
            )));
        }
        Ok(Self { visible, hidden, params })
    }

    pub fn visible(&self) -> usize {
        self.visible
    }

    pub fn hidden(&self) -> usize {
        self.hidden
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn params_mut(&mut self) -> &mut Params {
        &mut self.params
    }

    /// CRC-32 over the little-endian parameter bytes; cheap identity check
    /// for weight histories.
    pub fn fingerprint(&self) -> u32 {
        let mut hasher = crc32fast::Hasher::new();
        for v in self.params.iter() {
            hasher.update(&v.to_le_bytes());
        }
        hasher.finalize()
    }

    pub fn encode(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.visible {
            return Err(Error::type_mismatch(format!(
                "encoder expects {} inputs, got {}",
                self.visible,
                x.len()
            )));
        }
        let mut h = vec![0.0; self.hidden];
        self.encode_into(x, &mut h);
        Ok(h)
    }

    pub fn decode(&self, h: &[f64]) -> Result<Vec<f64>> {
        if h.len() != self.hidden {
            return Err(Error::type_mismatch(format!(
                "decoder expects {} hidden values, got {}",
                self.hidden,
                h.len()
            )));
        }
        let mut z = vec![0.0; self.visible];
        self.decode_into(h, &mut z);
        Ok(z)
    }

    /// `decode(encode(x))`.
    pub fn reconstruct(&self, x: &[f64]) -> Result<Vec<f64>> {
        let h = self.encode(x)?;
        self.decode(&h)
    }

    pub(crate) fn encode_into(&self, x: &[f64], h: &mut [f64]) {
        let v = self.visible;
        for (j, hj) in h.iter_mut().enumerate() {
            let row = &self.params.w[j * v..(j + 1) * v];
            let a: f64 = row.iter().zip(x).map(|(w, x)| w * x).sum();
            *hj = sigmoid(a + self.params.b[j]);
        }
    }

    fn decoder_logits_into(&self, h: &[f64], o: &mut [f64]) {
        let k = self.hidden;
        for (i, oi) in o.iter_mut().enumerate() {
            let row = &self.params.w_prime[i * k..(i + 1) * k];
            *oi = row.iter().zip(h).map(|(w, h)| w * h).sum::<f64>() + self.params.b_prime[i];
        }
    }

    pub(crate) fn decode_into(&self, h: &[f64], z: &mut [f64]) {
        self.decoder_logits_into(h, z);
        for zi in z.iter_mut() {
            *zi = sigmoid(*zi).clamp(OUTPUT_MARGIN, 1.0 - OUTPUT_MARGIN);
        }
    }

    /// Forward pass on `input`, loss against `target`, and `dL/d logit` in
    /// `s.dz`. Leaves `h` in `s.h`.
    fn forward_loss(&self, input: &[f64], target: &[f64], loss: Loss, s: &mut Scratch) -> f64 {
        self.encode_into(input, &mut s.h);
        self.decoder_logits_into(&s.h, &mut s.z);
        let mut total = 0.0;
        for ((o, &x), dz) in s.z.iter_mut().zip(target).zip(s.dz.iter_mut()) {
            match loss {
                Loss::CrossEntropy => {
                    total += softplus(*o) - x * *o;
                    *o = sigmoid(*o);
                    *dz = *o - x;
                }
                Loss::SquaredError => {
                    let z = sigmoid(*o);
                    let d = z - x;
                    total += 0.5 * d * d;
                    *o = z;
                    *dz = d * z * (1.0 - z);
                }
            }
        }
        total
    }

    /// Fill `s.dh` from `s.dz`/`s.h` (left by `forward_loss`) using the
    /// current decoder weights.
    fn hidden_deltas(&self, s: &mut Scratch) {
        let k = self.hidden;
        for (j, dh) in s.dh.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (i, dz) in s.dz.iter().enumerate() {
                acc += self.params.w_prime[i * k + j] * dz;
            }
            let hj = s.h[j];
            *dh = acc * hj * (1.0 - hj);
        }
    }

    /// Add `scale * gradient` into `out`; needs `hidden_deltas` first.
    fn accumulate(input: &[f64], s: &Scratch, scale: f64, out: &mut Params) {
        let k = s.h.len();
        let v = input.len();
        for (i, dz) in s.dz.iter().enumerate() {
            let g = scale * dz;
            out.b_prime[i] += g;
            for (w, &h) in out.w_prime[i * k..(i + 1) * k].iter_mut().zip(&s.h) {
                *w += g * h;
            }
        }
        for (j, dh) in s.dh.iter().enumerate() {
            let g = scale * dh;
            out.b[j] += g;
            if g != 0.0 {
                for (w, &x) in out.w[j * v..(j + 1) * v].iter_mut().zip(input) {
                    *w += g * x;
                }
            }
        }
    }

    fn backward(&self, input: &[f64], s: &mut Scratch, scale: f64, out: &mut Params) {
        self.hidden_deltas(s);
        Self::accumulate(input, s, scale, out);
    }

    /// One in-place SGD step on a single example.
    fn sgd_step(&mut self, input: &[f64], s: &mut Scratch, lr: f64) {
        self.hidden_deltas(s);
        Self::accumulate(input, s, -lr, &mut self.params);
    }

    /// Loss of reconstructing `target` from `input` (per example, summed over components).
    pub fn loss(&self, input: &[f64], target: &[f64], loss: Loss) -> Result<f64> {
        self.check_len(input)?;
        self.check_len(target)?;
        let mut s = Scratch::new(self.visible, self.hidden);
        Ok(self.forward_loss(input, target, loss, &mut s))
    }

    /// Analytic gradient of [`Self::loss`] with respect to every parameter.
    pub fn gradient(&self, input: &[f64], target: &[f64], loss: Loss) -> Result<Params> {
        self.check_len(input)?;
        self.check_len(target)?;
        let mut s = Scratch::new(self.visible, self.hidden);
        let mut g = Params::zeros(self.visible, self.hidden);
        self.forward_loss(input, target, loss, &mut s);
        self.backward(input, &mut s, 1.0, &mut g);
        Ok(g)
    }

    fn check_len(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.visible {
            return Err(Error::type_mismatch(format!(
                "expected {} components, got {}",
                self.visible,
                x.len()
            )));
        }
        Ok(())
    }

    /// Train for `cfg.epochs` epochs; returns the mean per-component loss of
    /// the last epoch (or of one clean forward pass when `epochs == 0`).
    pub fn train(&mut self, batch: &[Vec<f64>], cfg: &TrainConfig, rng: &mut RandomSource) -> Result<f64> {
        cfg.validate()?;
        if batch.is_empty() {
            return Err(Error::InvalidInput("training batch is empty".into()));
        }
        for x in batch {
            self.check_len(x)?;
        }
        let mut s = Scratch::new(self.visible, self.hidden);
        let per_component = 1.0 / (batch.len() * self.visible) as f64;

        if cfg.epochs == 0 {
            let total: f64 = batch
                .iter()
                .map(|x| self.forward_loss(x, x, cfg.loss, &mut s))
                .sum();
            return finite_loss(total * per_component);
        }

        let mb = cfg.minibatch_size.unwrap_or(batch.len()).min(batch.len());
        let mut order: Vec<usize> = (0..batch.len()).collect();
        let mut grad = Params::zeros(self.visible, self.hidden);
        let mut epoch_loss = 0.0;
        for _ in 0..cfg.epochs {
            if mb < batch.len() {
                order.shuffle(rng);
            }
            epoch_loss = 0.0;
            for chunk in order.chunks(mb) {
                if chunk.len() == 1 {
                    let x = &batch[chunk[0]];
                    s.input.copy_from_slice(x);
                    corrupt_in_place(&mut s.input, &cfg.corruption, rng);
                    let input = std::mem::take(&mut s.input);
                    epoch_loss += self.forward_loss(&input, x, cfg.loss, &mut s);
                    self.sgd_step(&input, &mut s, cfg.learning_rate);
                    s.input = input;
                } else {
                    grad.fill_zero();
                    for &idx in chunk {
                        let x = &batch[idx];
                        s.input.copy_from_slice(x);
                        corrupt_in_place(&mut s.input, &cfg.corruption, rng);
                        let input = std::mem::take(&mut s.input);
                        epoch_loss += self.forward_loss(&input, x, cfg.loss, &mut s);
                        self.backward(&input, &mut s, 1.0, &mut grad);
                        s.input = input;
                    }
                    self.params.axpy(-cfg.learning_rate / chunk.len() as f64, &grad);
                }
            }
            if !epoch_loss.is_finite() {
                return Err(Error::Numeric(format!(
                    "training loss became {epoch_loss} (learning rate {})",
                    cfg.learning_rate
                )));
            }
        }
        if self.params.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numeric("non-finite weights after training".into()));
        }
        finite_loss(epoch_loss * per_component)
    }

    /// Largest relative error between the backprop gradient and central
    /// finite differences, over all parameters, for reconstructing `x` from itself.
    pub fn gradient_check(&self, x: &[f64], epsilon: f64, loss: Loss) -> Result<f64> {
        if !(1e-7..=1e-3).contains(&epsilon) {
            return Err(Error::config(format!("epsilon {epsilon} outside [1e-7, 1e-3]")));
        }
        let analytic: Vec<f64> = self.gradient(x, x, loss)?.iter().copied().collect();
        let mut probe = self.clone();
        let mut s = Scratch::new(self.visible, self.hidden);
        let mut worst: f64 = 0.0;
        let n = probe.params.len();
        for p in 0..n {
            let orig = *nth_param(&mut probe.params, p);
            *nth_param(&mut probe.params, p) = orig + epsilon;
            let up = probe.forward_loss(x, x, loss, &mut s);
            *nth_param(&mut probe.params, p) = orig - epsilon;
            let down = probe.forward_loss(x, x, loss, &mut s);
            *nth_param(&mut probe.params, p) = orig;
            let numeric = (up - down) / (2.0 * epsilon);
            let a = analytic[p];
            let rel = (a - numeric).abs() / a.abs().max(numeric.abs()).max(1e-8);
            worst = worst.max(rel);
        }
        Ok(worst)
    }
}

fn nth_param(p: &mut Params, idx: usize) -> &mut f64 {
    let (nw, nb, nwp) = (p.w.len(), p.b.len(), p.w_prime.len());
    if idx < nw {
        &mut p.w[idx]
    } else if idx < nw + nb {
        &mut p.b[idx - nw]
    } else if idx < nw + nb + nwp {
        &mut p.w_prime[idx - nw - nb]
    } else {
        &mut p.b_prime[idx - nw - nb - nwp]
    }
}

fn finite_loss(l: f64) -> Result<f64> {
    if l.is_finite() {
        Ok(l.max(0.0))
    } else {
        Err(Error::Numeric(format!("training loss became {l}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(epochs: usize, lr: f64, rate: f64) -> TrainConfig {
        TrainConfig {
            epochs,
            learning_rate: lr,
            corruption: CorruptionSpec::bit_flip(rate),
            minibatch_size: Some(1),
            loss: Loss::CrossEntropy,
        }
    }

    #[test]
    fn init_weights_shapes_and_bounds() {
        let mut rng = RandomSource::new(5);
        let d = DenoisingAutoencoder::new(6, 6, &mut rng).unwrap();
        assert_eq!(d.params().w.len(), 36);
        assert_eq!(d.params().w_prime.len(), 36);
        assert!(d.params().b.iter().chain(&d.params().b_prime).all(|&v| v == 0.0));

        let d = DenoisingAutoencoder::new(1, 1, &mut rng).unwrap();
        assert_eq!(d.params().len(), 4);

        let d = DenoisingAutoencoder::new(20, 100, &mut rng).unwrap();
        let bound = 1.0 / 20f64.sqrt();
        assert!(d.params().w.iter().all(|w| w.abs() <= bound));
        assert!(d.params().w_prime.iter().all(|w| w.abs() <= 0.1));

        assert!(DenoisingAutoencoder::new(0, 3, &mut rng).is_err());
        assert!(DenoisingAutoencoder::new(3, 0, &mut rng).is_err());
    }

    #[test]
    fn corrupt_flips_exact_count() {
        let mut rng = RandomSource::new(11);
        let x = vec![1.0; 6];
        assert_eq!(corrupt(&x, &CorruptionSpec::bit_flip(0.0), &mut rng).unwrap(), x);
        assert_eq!(corrupt(&x, &CorruptionSpec::bit_flip(1.0), &mut rng).unwrap(), vec![0.0; 6]);
        let x: Vec<f64> = (0..20).map(|i| (i % 3 == 0) as u8 as f64).collect();
        for _ in 0..200 {
            let y = corrupt(&x, &CorruptionSpec::bit_flip(0.25), &mut rng).unwrap();
            assert_eq!(x.iter().zip(&y).filter(|(a, b)| a != b).count(), 5);
        }
        assert!(corrupt(&x, &CorruptionSpec::bit_flip(1.5), &mut rng).is_err());
        assert!(corrupt(&x, &CorruptionSpec::gaussian(-0.1), &mut rng).is_err());
    }

    #[test]
    fn gaussian_corruption_stays_in_unit_box() {
        let mut rng = RandomSource::new(2);
        let x = vec![0.0, 1.0, 0.5, 0.99];
        for _ in 0..500 {
            let y = corrupt(&x, &CorruptionSpec::gaussian(0.9), &mut rng).unwrap();
            assert!(y.iter().all(|v| (0.0..=1.0).contains(v)));
        }
    }

    #[test]
    fn zero_network_outputs_half() {
        let d = DenoisingAutoencoder::zeros(4, 3).unwrap();
        assert_eq!(d.encode(&[1.0, 0.0, 1.0, 0.3]).unwrap(), vec![0.5; 3]);
        assert_eq!(d.decode(&[0.2, 0.9, 0.1]).unwrap(), vec![0.5; 4]);
        assert_eq!(d.reconstruct(&[0.0; 4]).unwrap().len(), 4);
        assert!(d.encode(&[1.0]).is_err());
        assert!(d.decode(&[1.0]).is_err());
    }

    #[test]
    fn encoder_saturates() {
        let mut d = DenoisingAutoencoder::zeros(1, 1).unwrap();
        d.params_mut().w[0] = 1000.0;
        let h = d.encode(&[1.0]).unwrap();
        assert!((h[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn decoder_output_strictly_inside_unit_interval() {
        let mut d = DenoisingAutoencoder::zeros(2, 1).unwrap();
        d.params_mut().b_prime = vec![1e6, -1e6];
        let z = d.decode(&[0.5]).unwrap();
        assert!(z[0] < 1.0 && z[0] > 0.0);
        assert!(z[1] > 0.0 && z[1] < 1.0);
    }

    #[test]
    fn learns_single_target() {
        let mut rng = RandomSource::new(3);
        let mut d = DenoisingAutoencoder::new(6, 6, &mut rng).unwrap();
        let ones = vec![1.0; 6];
        let loss = d.train(&[ones.clone()], &cfg(500, 0.1, 0.05), &mut rng).unwrap();
        assert!(loss < 0.05, "loss {loss}");
        assert!(d.reconstruct(&ones).unwrap().iter().all(|&z| z > 0.9));
    }

    #[test]
    fn zero_epochs_leaves_weights() {
        let mut rng = RandomSource::new(4);
        let mut d = DenoisingAutoencoder::new(5, 3, &mut rng).unwrap();
        let before = d.clone();
        let x = vec![1.0, 0.0, 1.0, 0.0, 1.0];
        let loss = d.train(&[x.clone()], &cfg(0, 0.1, 0.2), &mut rng).unwrap();
        assert_eq!(d, before);
        let expect = before.loss(&x, &x, Loss::CrossEntropy).unwrap() / 5.0;
        assert!((loss - expect).abs() < 1e-15);
    }

    #[test]
    fn learns_three_targets() {
        let mut rng = RandomSource::new(8);
        let mut d = DenoisingAutoencoder::new(6, 6, &mut rng).unwrap();
        let targets: Vec<Vec<f64>> = [0usize, 7, 63]
            .iter()
            .map(|&i| (0..6).map(|b| ((i >> (5 - b)) & 1) as f64).collect())
            .collect();
        d.train(&targets, &cfg(1000, 0.1, 0.05), &mut rng).unwrap();
        for t in &targets {
            let z = d.reconstruct(t).unwrap();
            for (zi, ti) in z.iter().zip(t) {
                assert!((zi - ti).abs() < 0.2, "target {t:?} reconstructed as {z:?}");
            }
        }
    }

    #[test]
    fn training_rejects_bad_input() {
        let mut rng = RandomSource::new(4);
        let mut d = DenoisingAutoencoder::new(3, 2, &mut rng).unwrap();
        assert!(matches!(d.train(&[], &cfg(1, 0.1, 0.0), &mut rng), Err(Error::InvalidInput(_))));
        assert!(d.train(&[vec![1.0; 4]], &cfg(1, 0.1, 0.0), &mut rng).is_err());
    }

    #[test]
    fn divergent_training_is_a_numeric_failure() {
        let mut rng = RandomSource::new(4);
        let mut d = DenoisingAutoencoder::new(4, 4, &mut rng).unwrap();
        let batch = vec![vec![1.0, 0.0, 1.0, 0.0], vec![0.0, 1.0, 0.0, 1.0]];
        let bad = TrainConfig {
            learning_rate: 1e308,
            ..cfg(50, 0.1, 0.25)
        };
        let out = d.train(&batch, &bad, &mut rng);
        assert!(matches!(out, Err(Error::Numeric(_))), "{out:?}");
    }

    #[test]
    fn full_batch_and_minibatch_both_reduce_loss() {
        let batch: Vec<Vec<f64>> = vec![vec![1.0, 1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0, 1.0]];
        for mb in [None, Some(1)] {
            let mut rng = RandomSource::new(6);
            let mut d = DenoisingAutoencoder::new(4, 4, &mut rng).unwrap();
            let c = TrainConfig {
                minibatch_size: mb,
                ..cfg(0, 0.5, 0.0)
            };
            let initial = d.train(&batch, &c, &mut rng).unwrap();
            let trained = d.train(&batch, &TrainConfig { epochs: 300, ..c }, &mut rng).unwrap();
            assert!(trained < initial, "{mb:?}: {trained} !< {initial}");
        }
    }

    #[test]
    fn gradient_check_on_zero_net() {
        let d = DenoisingAutoencoder::zeros(5, 4).unwrap();
        let x = [1.0, 0.0, 0.0, 1.0, 1.0];
        assert!(d.gradient_check(&x, 1e-5, Loss::CrossEntropy).unwrap() < 1e-4);
        assert!(d.gradient_check(&x, 1e-5, Loss::SquaredError).unwrap() < 1e-4);
        assert!(d.gradient_check(&x, 1e-2, Loss::SquaredError).is_err());
    }

    #[test]
    fn gradient_check_random_net() {
        let mut rng = RandomSource::new(17);
        let d = DenoisingAutoencoder::new(10, 5, &mut rng).unwrap();
        let xb: Vec<f64> = (0..10).map(|_| rng.random_bool(0.5) as u8 as f64).collect();
        let xc: Vec<f64> = (0..10).map(|_| rng.random::<f64>()).collect();
        assert!(d.gradient_check(&xb, 1e-5, Loss::CrossEntropy).unwrap() < 1e-4);
        assert!(d.gradient_check(&xc, 1e-5, Loss::SquaredError).unwrap() < 1e-4);
    }
}
