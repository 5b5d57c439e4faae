//! Per-feature min-max scaling of `(P, T, value)` to `[0, 1]`.

use serde::{Deserialize, Serialize};

use crate::{Dataset, Result, Sample, SurrogateError};

const FEATURES: [&str; 3] = ["pressure", "temperature", "value"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinMaxScaler {
    /// Indexed pressure, temperature, value.
    pub mins: [f64; 3],
    pub maxs: [f64; 3],
}

impl MinMaxScaler {
    pub fn fit(dataset: &Dataset) -> Result<Self> {
        let mut mins = [f64::INFINITY; 3];
        let mut maxs = [f64::NEG_INFINITY; 3];
        for s in dataset.samples() {
            for (k, v) in [s.pressure, s.temperature, s.value].into_iter().enumerate() {
                mins[k] = mins[k].min(v);
                maxs[k] = maxs[k].max(v);
            }
        }
        let scaler = MinMaxScaler { mins, maxs };
        scaler.validate()?;
        Ok(scaler)
    }

    pub fn validate(&self) -> Result<()> {
        for ((feature, lo), hi) in FEATURES.iter().zip(self.mins).zip(self.maxs) {
            if !(hi > lo) {
                return Err(SurrogateError::DegenerateFeature { feature, value: lo });
            }
        }
        Ok(())
    }

    fn forward(&self, k: usize, x: f64) -> f64 {
        (x - self.mins[k]) / (self.maxs[k] - self.mins[k])
    }

    fn backward(&self, k: usize, x: f64) -> f64 {
        self.mins[k] + x * (self.maxs[k] - self.mins[k])
    }

    pub fn scale_input(&self, pressure: f64, temperature: f64) -> [f64; 2] {
        [self.forward(0, pressure), self.forward(1, temperature)]
    }

    pub fn scale_value(&self, value: f64) -> f64 {
        self.forward(2, value)
    }

    pub fn unscale_value(&self, value: f64) -> f64 {
        self.backward(2, value)
    }

    pub fn scale_sample(&self, s: &Sample) -> Sample {
        Sample {
            pressure: self.forward(0, s.pressure),
            temperature: self.forward(1, s.temperature),
            value: self.forward(2, s.value),
        }
    }

    pub fn unscale_sample(&self, s: &Sample) -> Sample {
        Sample {
            pressure: self.backward(0, s.pressure),
            temperature: self.backward(1, s.temperature),
            value: self.backward(2, s.value),
        }
    }

    pub fn denormalize(&self, normalized: &Dataset) -> Result<Dataset> {
        Dataset::new(
            normalized.objective,
            normalized.model_tag,
            normalized
                .samples()
                .iter()
                .map(|s| self.unscale_sample(s))
                .collect(),
        )
    }
}

/// Min-max normalize every feature of `dataset`.
pub fn normalize(dataset: &Dataset) -> Result<(Dataset, MinMaxScaler)> {
    let scaler = MinMaxScaler::fit(dataset)?;
    let samples = dataset
        .samples()
        .iter()
        .map(|s| scaler.scale_sample(s))
        .collect();
    Ok((
        Dataset::new(dataset.objective, dataset.model_tag, samples)?,
        scaler,
    ))
}
