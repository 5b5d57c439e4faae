//! Fully connected feed-forward network: ReLU hidden layers, identity output.

use std::io::{Read, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{MinMaxScaler, Result, SurrogateError};

/// Version tag written into every persisted network.
pub const MLP_FORMAT_TAG: &str = "polycell-mlp-v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Activation {
    Relu,
    Identity,
}

impl Activation {
    fn apply(self, x: f64) -> f64 {
        match self {
            Activation::Relu => x.max(0.0),
            Activation::Identity => x,
        }
    }

    fn derivative(self, pre: f64) -> f64 {
        match self {
            Activation::Relu => {
                if pre > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Activation::Identity => 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MlpConfig {
    pub input_dim: usize,
    pub hidden_layers: Vec<usize>,
    pub output_dim: usize,
    pub hidden_activation: Activation,
    pub output_activation: Activation,
}

impl Default for MlpConfig {
    /// Two inputs, two hidden layers of ten ReLU units, one linear output.
    fn default() -> Self {
        MlpConfig {
            input_dim: 2,
            hidden_layers: vec![10, 10],
            output_dim: 1,
            hidden_activation: Activation::Relu,
            output_activation: Activation::Identity,
        }
    }
}

impl MlpConfig {
    pub fn validate(&self) -> Result<()> {
        if self.input_dim == 0 || self.output_dim == 0 || self.hidden_layers.contains(&0) {
            return Err(SurrogateError::Shape(format!(
                "layer widths must be >= 1 (input {}, hidden {:?}, output {})",
                self.input_dim, self.hidden_layers, self.output_dim
            )));
        }
        Ok(())
    }

    fn widths(&self) -> Vec<usize> {
        std::iter::once(self.input_dim)
            .chain(self.hidden_layers.iter().copied())
            .chain(std::iter::once(self.output_dim))
            .collect()
    }
}

/// One affine layer; `weights` is row-major `outputs x inputs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Layer {
    pub inputs: usize,
    pub outputs: usize,
    pub weights: Vec<f64>,
    pub biases: Vec<f64>,
}

impl Layer {
    fn affine(&self, x: &[f64], out: &mut Vec<f64>) {
        out.clear();
        out.extend(self.biases.iter().enumerate().map(|(o, b)| {
            let row = &self.weights[o * self.inputs..(o + 1) * self.inputs];
            b + row.iter().zip(x).map(|(w, xi)| w * xi).sum::<f64>()
        }));
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mlp {
    pub config: MlpConfig,
    pub layers: Vec<Layer>,
    /// Attached once the network has been trained on physical data.
    pub scaler: Option<MinMaxScaler>,
}

/// Parameter gradients laid out like [`Mlp::layers`].
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    pub weights: Vec<Vec<f64>>,
    pub biases: Vec<Vec<f64>>,
}

impl Gradients {
    pub fn flatten(&self) -> Vec<f64> {
        self.weights
            .iter()
            .zip(&self.biases)
            .flat_map(|(w, b)| w.iter().chain(b).copied())
            .collect()
    }
}

impl Mlp {
    /// He-uniform weights `U(-sqrt(6/fan_in), sqrt(6/fan_in))` from a ChaCha8 stream
    /// seeded with `seed`, drawn layer by layer in row-major order; zero biases.
    pub fn init(config: &MlpConfig, seed: u64) -> Result<Self> {
        config.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let widths = config.widths();
        let layers = widths
            .windows(2)
            .map(|w| {
                let (inputs, outputs) = (w[0], w[1]);
                let limit = (6.0 / inputs as f64).sqrt();
                Layer {
                    inputs,
                    outputs,
                    weights: (0..inputs * outputs)
                        .map(|_| rng.random_range(-limit..limit))
                        .collect(),
                    biases: vec![0.0; outputs],
                }
            })
            .collect();
        Ok(Mlp {
            config: config.clone(),
            layers,
            scaler: None,
        })
    }

    pub fn parameter_count(&self) -> usize {
        self.layers
            .iter()
            .map(|l| l.weights.len() + l.biases.len())
            .sum()
    }

    fn activation(&self, layer: usize) -> Activation {
        if layer + 1 == self.layers.len() {
            self.config.output_activation
        } else {
            self.config.hidden_activation
        }
    }

    fn check_input(&self, input: &[f64]) -> Result<()> {
        if input.len() != self.config.input_dim {
            return Err(SurrogateError::Shape(format!(
                "expected {} inputs, got {}",
                self.config.input_dim,
                input.len()
            )));
        }
        Ok(())
    }

    /// Forward pass on normalized inputs.
    pub fn forward(&self, input: &[f64]) -> Result<Vec<f64>> {
        self.check_input(input)?;
        let mut x = input.to_vec();
        let mut z = Vec::new();
        for (k, layer) in self.layers.iter().enumerate() {
            layer.affine(&x, &mut z);
            let act = self.activation(k);
            x.clear();
            x.extend(z.iter().map(|&v| act.apply(v)));
        }
        Ok(x)
    }

    /// Prediction in physical units (atm, °C -> W); requires a scaler.
    pub fn predict(&self, pressure: f64, temperature: f64) -> Result<f64> {
        let scaler = self
            .scaler
            .as_ref()
            .ok_or_else(|| SurrogateError::Format("network carries no scaler".into()))?;
        let out = self.forward(&scaler.scale_input(pressure, temperature))?;
        Ok(scaler.unscale_value(out[0]))
    }

    /// Mean squared error over a batch of `(input, target)` pairs.
    pub fn loss(&self, batch: &[(Vec<f64>, Vec<f64>)]) -> Result<f64> {
        if batch.is_empty() {
            return Err(SurrogateError::Domain("empty batch".into()));
        }
        let mut total = 0.0;
        for (x, t) in batch {
            let y = self.forward(x)?;
            self.check_target(t)?;
            total += y.iter().zip(t).map(|(a, b)| (a - b) * (a - b)).sum::<f64>();
        }
        Ok(total / (batch.len() * self.config.output_dim) as f64)
    }

    fn check_target(&self, target: &[f64]) -> Result<()> {
        if target.len() != self.config.output_dim {
            return Err(SurrogateError::Shape(format!(
                "expected {} targets, got {}",
                self.config.output_dim,
                target.len()
            )));
        }
        Ok(())
    }

    /// Backpropagated gradients of [`Mlp::loss`] with respect to every parameter.
    pub fn gradients(&self, batch: &[(Vec<f64>, Vec<f64>)]) -> Result<Gradients> {
        if batch.is_empty() {
            return Err(SurrogateError::Domain("empty batch".into()));
        }
        let mut grads = Gradients {
            weights: self
                .layers
                .iter()
                .map(|l| vec![0.0; l.weights.len()])
                .collect(),
            biases: self
                .layers
                .iter()
                .map(|l| vec![0.0; l.biases.len()])
                .collect(),
        };
        let scale = 2.0 / (batch.len() * self.config.output_dim) as f64;
        let depth = self.layers.len();
        // activations[k] feeds layer k; pre[k] is layer k's affine output.
        let mut activations: Vec<Vec<f64>> = vec![Vec::new(); depth + 1];
        let mut pre: Vec<Vec<f64>> = vec![Vec::new(); depth];
        let mut delta = Vec::new();
        let mut next = Vec::new();

        for (x, t) in batch {
            self.check_input(x)?;
            self.check_target(t)?;
            activations[0].clear();
            activations[0].extend_from_slice(x);
            for k in 0..depth {
                let (head, tail) = activations.split_at_mut(k + 1);
                self.layers[k].affine(&head[k], &mut pre[k]);
                let act = self.activation(k);
                tail[0].clear();
                tail[0].extend(pre[k].iter().map(|&v| act.apply(v)));
            }
            delta.clear();
            delta.extend(
                activations[depth]
                    .iter()
                    .zip(t)
                    .zip(&pre[depth - 1])
                    .map(|((y, t), z)| scale * (y - t) * self.activation(depth - 1).derivative(*z)),
            );
            for k in (0..depth).rev() {
                let layer = &self.layers[k];
                let input = &activations[k];
                for (o, d) in delta.iter().enumerate() {
                    grads.biases[k][o] += d;
                    let row = &mut grads.weights[k][o * layer.inputs..(o + 1) * layer.inputs];
                    for (g, xi) in row.iter_mut().zip(input) {
                        *g += d * xi;
                    }
                }
                if k > 0 {
                    let act = self.activation(k - 1);
                    next.clear();
                    next.extend((0..layer.inputs).map(|i| {
                        let back: f64 = delta
                            .iter()
                            .enumerate()
                            .map(|(o, d)| d * layer.weights[o * layer.inputs + i])
                            .sum();
                        back * act.derivative(pre[k - 1][i])
                    }));
                    std::mem::swap(&mut delta, &mut next);
                }
            }
        }
        Ok(grads)
    }

    /// All parameters, layer by layer, weights then biases.
    pub fn parameters(&self) -> Vec<f64> {
        self.layers
            .iter()
            .flat_map(|l| l.weights.iter().chain(&l.biases).copied())
            .collect()
    }

    pub fn set_parameters(&mut self, params: &[f64]) -> Result<()> {
        if params.len() != self.parameter_count() {
            return Err(SurrogateError::Shape(format!(
                "expected {} parameters, got {}",
                self.parameter_count(),
                params.len()
            )));
        }
        let mut rest = params;
        for l in &mut self.layers {
            let (w, r) = rest.split_at(l.weights.len());
            l.weights.copy_from_slice(w);
            let (b, r) = r.split_at(l.biases.len());
            l.biases.copy_from_slice(b);
            rest = r;
        }
        Ok(())
    }

    fn check_shapes(&self) -> Result<()> {
        self.config.validate()?;
        let widths = self.config.widths();
        if widths.len() != self.layers.len() + 1 {
            return Err(SurrogateError::Format(
                "layer count does not match config".into(),
            ));
        }
        for (k, l) in self.layers.iter().enumerate() {
            if l.inputs != widths[k]
                || l.outputs != widths[k + 1]
                || l.weights.len() != l.inputs * l.outputs
                || l.biases.len() != l.outputs
            {
                return Err(SurrogateError::Format(format!(
                    "layer {k} has inconsistent shape"
                )));
            }
        }
        if let Some(s) = &self.scaler {
            s.validate()?;
        }
        Ok(())
    }

    pub fn save<W: Write>(&self, writer: W) -> Result<()> {
        let doc = ModelDocument {
            format: MLP_FORMAT_TAG.to_string(),
            network: self.clone(),
        };
        serde_json::to_writer_pretty(writer, &doc)?;
        Ok(())
    }

    pub fn load<R: Read>(reader: R) -> Result<Self> {
        let doc: ModelDocument = serde_json::from_reader(reader)?;
        if doc.format != MLP_FORMAT_TAG {
            return Err(SurrogateError::Format(format!(
                "unsupported format tag `{}` (expected `{MLP_FORMAT_TAG}`)",
                doc.format
            )));
        }
        doc.network.check_shapes()?;
        Ok(doc.network)
    }
}

#[derive(Serialize, Deserialize)]
struct ModelDocument {
    format: String,
    #[serde(flatten)]
    network: Mlp,
}
