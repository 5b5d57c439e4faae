//! `(pressure, temperature) -> value` samples and their CSV form.

use std::collections::HashSet;
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use fcell_core::ModelTag;
use serde::{Deserialize, Serialize};

use crate::{Result, SurrogateError};

pub const CSV_HEADER: [&str; 3] = ["pressure_atm", "temperature_c", "value_w"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Production,
    Consumption,
}

impl Objective {
    pub fn name(self) -> &'static str {
        match self {
            Objective::Production => "production",
            Objective::Consumption => "consumption",
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Objective {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "production" => Ok(Objective::Production),
            "consumption" => Ok(Objective::Consumption),
            other => Err(format!("unknown objective `{other}`")),
        }
    }
}

/// One sample: pressure in atm, temperature in °C, value in W.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub pressure: f64,
    pub temperature: f64,
    pub value: f64,
}

/// Format a float with 17 significant digits.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub objective: Objective,
    pub model_tag: ModelTag,
    samples: Vec<Sample>,
}

impl Dataset {
    /// Rejects empty sets, non-finite entries and repeated `(P, T)` pairs.
    pub fn new(objective: Objective, model_tag: ModelTag, samples: Vec<Sample>) -> Result<Self> {
        if samples.is_empty() {
            return Err(SurrogateError::Domain("dataset is empty".into()));
        }
        let mut seen = HashSet::with_capacity(samples.len());
        for (row, s) in samples.iter().enumerate() {
            if !(s.pressure.is_finite() && s.temperature.is_finite() && s.value.is_finite()) {
                return Err(SurrogateError::Domain(format!(
                    "row {row} holds a non-finite entry"
                )));
            }
            if !seen.insert((s.pressure.to_bits(), s.temperature.to_bits())) {
                return Err(SurrogateError::Domain(format!(
                    "row {row} repeats (P, T) = ({}, {})",
                    s.pressure, s.temperature
                )));
            }
        }
        Ok(Dataset {
            objective,
            model_tag,
            samples,
        })
    }

    /// Sample `f` at every grid point.
    pub fn from_fn(
        objective: Objective,
        model_tag: ModelTag,
        points: &[(f64, f64)],
        f: impl Fn(f64, f64) -> f64,
    ) -> Result<Self> {
        let samples = points
            .iter()
            .map(|&(pressure, temperature)| Sample {
                pressure,
                temperature,
                value: f(pressure, temperature),
            })
            .collect();
        Dataset::new(objective, model_tag, samples)
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn points(&self) -> Vec<(f64, f64)> {
        self.samples
            .iter()
            .map(|s| (s.pressure, s.temperature))
            .collect()
    }

    pub fn values(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.value).collect()
    }

    /// `max - min` of the values.
    pub fn value_range(&self) -> f64 {
        let (lo, hi) = self
            .samples
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| {
                (lo.min(s.value), hi.max(s.value))
            });
        hi - lo
    }

    /// Check that every sample lies inside the design space.
    pub fn check_within(&self, p_bounds: (f64, f64), t_bounds: (f64, f64)) -> Result<()> {
        for (row, s) in self.samples.iter().enumerate() {
            if !(p_bounds.0..=p_bounds.1).contains(&s.pressure)
                || !(t_bounds.0..=t_bounds.1).contains(&s.temperature)
            {
                return Err(SurrogateError::Domain(format!(
                    "row {row} ({}, {}) lies outside the design space",
                    s.pressure, s.temperature
                )));
            }
        }
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(CSV_HEADER)?;
        for s in &self.samples {
            w.write_record([
                format_f64(s.pressure),
                format_f64(s.temperature),
                format_f64(s.value),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(reader: R, objective: Objective, model_tag: ModelTag) -> Result<Self> {
        let mut r = csv::Reader::from_reader(reader);
        let headers = r.headers()?.clone();
        if headers.iter().ne(CSV_HEADER.iter().copied()) {
            return Err(SurrogateError::Format(format!(
                "expected header `{}`, found `{}`",
                CSV_HEADER.join(","),
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut samples = Vec::new();
        for (row, record) in r.records().enumerate() {
            let record = record?;
            let field = |k: usize| -> Result<f64> {
                record
                    .get(k)
                    .and_then(|v| v.trim().parse::<f64>().ok())
                    .ok_or_else(|| {
                        SurrogateError::Format(format!("row {row}: bad `{}` field", CSV_HEADER[k]))
                    })
            };
            samples.push(Sample {
                pressure: field(0)?,
                temperature: field(1)?,
                value: field(2)?,
            });
        }
        Dataset::new(objective, model_tag, samples)
    }
}
