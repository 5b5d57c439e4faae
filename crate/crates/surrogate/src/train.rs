//! Gradient-based training of [`Mlp`] on normalized datasets.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{normalize, Dataset, Mlp, MlpConfig, Result, SurrogateError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OptimizerKind {
    PlainGradientDescent,
    /// Adam with β1 = 0.9, β2 = 0.999, ε = 1e-8.
    AdaptiveMoments,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub learning_rate: f64,
    /// Learning rate reached at the last epoch; the rate decays geometrically from
    /// `learning_rate`. `None` keeps it constant.
    pub final_learning_rate: Option<f64>,
    pub epochs: usize,
    /// `None` trains full-batch.
    pub batch_size: Option<usize>,
    pub seed: u64,
    pub optimizer: OptimizerKind,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            learning_rate: 5e-3,
            final_learning_rate: Some(1e-5),
            epochs: 20_000,
            batch_size: None,
            seed: 1,
            optimizer: OptimizerKind::AdaptiveMoments,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self, dataset_len: usize) -> Result<()> {
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(SurrogateError::Domain(format!(
                "learning rate must be positive (got {})",
                self.learning_rate
            )));
        }
        if let Some(lr) = self.final_learning_rate {
            if !(lr > 0.0 && lr.is_finite()) {
                return Err(SurrogateError::Domain(format!(
                    "final learning rate must be positive (got {lr})"
                )));
            }
        }
        if self.epochs == 0 {
            return Err(SurrogateError::Domain("epochs must be >= 1".into()));
        }
        if let Some(b) = self.batch_size {
            if b == 0 || b > dataset_len {
                return Err(SurrogateError::Domain(format!(
                    "batch size {b} outside 1..={dataset_len}"
                )));
            }
        }
        Ok(())
    }
}

/// Loss above which training is declared divergent.
pub const DIVERGENCE_LOSS: f64 = 1e6;

const BETA1: f64 = 0.9;
const BETA2: f64 = 0.999;
const EPSILON: f64 = 1e-8;

struct Adam {
    m: Vec<f64>,
    v: Vec<f64>,
    step: i32,
}

/// Train `net` on an already-normalized dataset. Returns the network and the
/// per-epoch mean squared error (mean of the epoch's batch losses, measured before
/// each update).
pub fn train(mut net: Mlp, normalized: &Dataset, config: &TrainConfig) -> Result<(Mlp, Vec<f64>)> {
    config.validate(normalized.len())?;
    let rows: Vec<(Vec<f64>, Vec<f64>)> = normalized
        .samples()
        .iter()
        .map(|s| (vec![s.pressure, s.temperature], vec![s.value]))
        .collect();
    let batch_size = config.batch_size.unwrap_or(rows.len());
    let mut order: Vec<usize> = (0..rows.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut params = net.parameters();
    let mut adam = Adam {
        m: vec![0.0; params.len()],
        v: vec![0.0; params.len()],
        step: 0,
    };
    let mut history = Vec::with_capacity(config.epochs);
    let mut batch = Vec::with_capacity(batch_size);

    let decay = match config.final_learning_rate {
        Some(last) if config.epochs > 1 => {
            (last / config.learning_rate).powf(1.0 / (config.epochs - 1) as f64)
        }
        _ => 1.0,
    };
    let mut lr = config.learning_rate;

    for epoch in 0..config.epochs {
        if batch_size < rows.len() {
            order.shuffle(&mut rng);
        }
        let mut epoch_loss = 0.0;
        let mut batches = 0usize;
        for chunk in order.chunks(batch_size) {
            batch.clear();
            batch.extend(chunk.iter().map(|&k| rows[k].clone()));
            let loss = net.loss(&batch)?;
            if !loss.is_finite() || loss > DIVERGENCE_LOSS {
                return Err(SurrogateError::Divergence { epoch, loss });
            }
            epoch_loss += loss;
            batches += 1;
            let grad = net.gradients(&batch)?.flatten();
            match config.optimizer {
                OptimizerKind::PlainGradientDescent => {
                    for (p, g) in params.iter_mut().zip(&grad) {
                        *p -= lr * g;
                    }
                }
                OptimizerKind::AdaptiveMoments => {
                    adam.step += 1;
                    let c1 = 1.0 - BETA1.powi(adam.step);
                    let c2 = 1.0 - BETA2.powi(adam.step);
                    for (k, (p, g)) in params.iter_mut().zip(&grad).enumerate() {
                        adam.m[k] = BETA1 * adam.m[k] + (1.0 - BETA1) * g;
                        adam.v[k] = BETA2 * adam.v[k] + (1.0 - BETA2) * g * g;
                        let m_hat = adam.m[k] / c1;
                        let v_hat = adam.v[k] / c2;
                        *p -= lr * m_hat / (v_hat.sqrt() + EPSILON);
                    }
                }
            }
            net.set_parameters(&params)?;
        }
        history.push(epoch_loss / batches as f64);
        lr *= decay;
    }
    Ok((net, history))
}

/// A trained surrogate in physical units.
#[derive(Debug, Clone)]
pub struct TrainOutcome {
    pub network: Mlp,
    pub loss_history: Vec<f64>,
    /// Root mean squared error on the training data, W.
    pub rmse: f64,
    /// `max - min` of the training values, W.
    pub value_range: f64,
}

impl TrainOutcome {
    pub fn relative_rmse(&self) -> f64 {
        self.rmse / self.value_range
    }
}

/// Normalize `dataset`, initialize a network with `config.seed`, train it and attach the
/// scaler so that [`Mlp::predict`] works in physical units.
pub fn fit_network(
    dataset: &Dataset,
    mlp_config: &MlpConfig,
    config: &TrainConfig,
) -> Result<TrainOutcome> {
    let (normalized, scaler) = normalize(dataset)?;
    let net = Mlp::init(mlp_config, config.seed)?;
    let (mut network, loss_history) = train(net, &normalized, config)?;
    network.scaler = Some(scaler);
    let mut sq = 0.0;
    for s in dataset.samples() {
        let e = network.predict(s.pressure, s.temperature)? - s.value;
        sq += e * e;
    }
    Ok(TrainOutcome {
        network,
        loss_history,
        rmse: (sq / dataset.len() as f64).sqrt(),
        value_range: dataset.value_range(),
    })
}
