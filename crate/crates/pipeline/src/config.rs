//! Run configuration: a TOML document whose keys all have defaults.
//!
//! ```toml
//! seed = 1                    # every stochastic component
//! preset = "pentagonal"       # cubic | pentagonal | hexagonal
//! source = "paper"            # paper | physics | surrogate | fitted
//! output_dir = "out"
//! operating_voltage = 0.6     # V, for physics power evaluations
//!
//! bounds.pressure = [1.0, 5.0]        # atm
//! bounds.temperature = [50.0, 90.0]   # °C
//! grid.pressure_steps = 9
//! grid.temperature_steps = 9
//!
//! train.hidden_layers = [10, 10]
//! train.optimizer = "adam"            # adam | sgd
//! train.learning_rate = 5e-3
//! train.final_learning_rate = 1e-5
//! train.epochs = 20000
//! # train.batch_size = 16            # omit for full batch
//!
//! ga.population_size = 200
//! ga.generations = 200
//! ga.crossover_probability = 0.9
//! ga.crossover_index = 15.0
//! ga.mutation_probability = 0.5
//! ga.mutation_index = 20.0
//!
//! polarize.pressure = 1.0             # atm
//! polarize.temperature = 80.0         # °C
//! # polarize.voltages = [1.0, 0.8, 0.6]
//! ```

use std::path::{Path, PathBuf};
use std::str::FromStr;

use fcell_core::ModelTag;
use fcell_evolve::{Bounds, GAConfig};
use fcell_surrogate::{MlpConfig, OptimizerKind, TrainConfig};
use serde::{Deserialize, Serialize};

use crate::{PipelineError, Result};

/// Where optimization objectives come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectiveSource {
    /// The published quadratic surfaces of the preset.
    #[default]
    Paper,
    /// The reduced-order cell model, evaluated directly.
    Physics,
    /// Neural networks trained by `train`.
    Surrogate,
    /// Quadratic surfaces produced by `fit`.
    Fitted,
}

impl ObjectiveSource {
    pub fn name(self) -> &'static str {
        match self {
            ObjectiveSource::Paper => "paper",
            ObjectiveSource::Physics => "physics",
            ObjectiveSource::Surrogate => "surrogate",
            ObjectiveSource::Fitted => "fitted",
        }
    }
}

impl FromStr for ObjectiveSource {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "paper" => Ok(ObjectiveSource::Paper),
            "physics" => Ok(ObjectiveSource::Physics),
            "surrogate" => Ok(ObjectiveSource::Surrogate),
            "fitted" => Ok(ObjectiveSource::Fitted),
            other => Err(format!(
                "unknown objective source `{other}` (expected paper, physics, surrogate or fitted)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BoundsSection {
    pub pressure: [f64; 2],
    pub temperature: [f64; 2],
}

impl Default for BoundsSection {
    fn default() -> Self {
        BoundsSection {
            pressure: [1.0, 5.0],
            temperature: [50.0, 90.0],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSection {
    pub pressure_steps: usize,
    pub temperature_steps: usize,
}

impl Default for GridSection {
    fn default() -> Self {
        GridSection {
            pressure_steps: 9,
            temperature_steps: 9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OptimizerName {
    #[default]
    Adam,
    Sgd,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainSection {
    pub hidden_layers: Vec<usize>,
    pub optimizer: OptimizerName,
    pub learning_rate: f64,
    pub final_learning_rate: f64,
    pub epochs: usize,
    pub batch_size: Option<usize>,
}

impl Default for TrainSection {
    fn default() -> Self {
        let t = TrainConfig::default();
        TrainSection {
            hidden_layers: MlpConfig::default().hidden_layers,
            optimizer: OptimizerName::Adam,
            learning_rate: t.learning_rate,
            final_learning_rate: t.final_learning_rate.unwrap_or(t.learning_rate),
            epochs: t.epochs,
            batch_size: t.batch_size,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaSection {
    pub population_size: usize,
    pub generations: usize,
    pub crossover_probability: f64,
    pub crossover_index: f64,
    pub mutation_probability: f64,
    pub mutation_index: f64,
}

impl Default for GaSection {
    fn default() -> Self {
        let g = GAConfig::default();
        GaSection {
            population_size: g.population_size,
            generations: g.generations,
            crossover_probability: g.crossover_probability,
            crossover_index: g.crossover_index,
            mutation_probability: g.mutation_probability,
            mutation_index: g.mutation_index,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PolarizeSection {
    /// atm
    pub pressure: f64,
    /// °C
    pub temperature: f64,
    /// V. When absent: the reversible voltage followed by 1.10 V down to 0.30 V in
    /// 0.05 V steps.
    pub voltages: Option<Vec<f64>>,
}

impl Default for PolarizeSection {
    fn default() -> Self {
        PolarizeSection {
            pressure: 1.0,
            temperature: 80.0,
            voltages: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub preset: ModelTag,
    pub source: ObjectiveSource,
    /// Not echoed into manifests, so that runs in different directories compare equal.
    #[serde(skip_serializing)]
    pub output_dir: PathBuf,
    pub operating_voltage: f64,
    pub bounds: BoundsSection,
    pub grid: GridSection,
    pub train: TrainSection,
    pub ga: GaSection,
    pub polarize: PolarizeSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 1,
            preset: ModelTag::Pentagonal,
            source: ObjectiveSource::Paper,
            output_dir: PathBuf::from("out"),
            operating_voltage: 0.6,
            bounds: BoundsSection::default(),
            grid: GridSection::default(),
            train: TrainSection::default(),
            ga: GaSection::default(),
            polarize: PolarizeSection::default(),
        }
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(PipelineError::Config(format!(
            "{name} must be positive and finite (got {v})"
        )))
    }
}

impl RunConfig {
    /// Parse a configuration document. Syntax errors carry the line number; unknown
    /// keys are rejected by name.
    pub fn parse(text: &str) -> Result<Self> {
        let config: RunConfig = toml::from_str(text)
            .map_err(|e| PipelineError::Config(e.to_string().trim_end().to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        self.bounds().map_err(PipelineError::from)?;
        if self.grid.pressure_steps < 2 || self.grid.temperature_steps < 2 {
            return Err(PipelineError::Config(format!(
                "grid needs at least 2 steps per axis (got {} x {})",
                self.grid.pressure_steps, self.grid.temperature_steps
            )));
        }
        positive("operating_voltage", self.operating_voltage)?;
        self.ga_config().validate()?;
        let t = &self.train;
        positive("train.learning_rate", t.learning_rate)?;
        positive("train.final_learning_rate", t.final_learning_rate)?;
        if t.epochs == 0 {
            return Err(PipelineError::Config("train.epochs must be >= 1".into()));
        }
        if t.batch_size == Some(0) {
            return Err(PipelineError::Config(
                "train.batch_size must be >= 1".into(),
            ));
        }
        self.mlp_config().validate()?;
        positive("polarize.pressure", self.polarize.pressure)?;
        positive(
            "polarize.temperature + 273.15",
            self.polarize.temperature + 273.15,
        )?;
        if let Some(vs) = &self.polarize.voltages {
            if vs.is_empty() {
                return Err(PipelineError::Config(
                    "polarize.voltages must not be empty".into(),
                ));
            }
            for &v in vs {
                positive("polarize.voltages entry", v)?;
            }
        }
        Ok(())
    }

    pub fn bounds(&self) -> fcell_evolve::Result<Bounds> {
        let [p0, p1] = self.bounds.pressure;
        let [t0, t1] = self.bounds.temperature;
        Bounds::new((p0, p1), (t0, t1))
    }

    pub fn ga_config(&self) -> GAConfig {
        let g = &self.ga;
        GAConfig {
            population_size: g.population_size,
            generations: g.generations,
            seed: self.seed,
            crossover_probability: g.crossover_probability,
            crossover_index: g.crossover_index,
            mutation_probability: g.mutation_probability,
            mutation_index: g.mutation_index,
        }
    }

    pub fn train_config(&self) -> TrainConfig {
        let t = &self.train;
        TrainConfig {
            learning_rate: t.learning_rate,
            final_learning_rate: Some(t.final_learning_rate),
            epochs: t.epochs,
            batch_size: t.batch_size,
            seed: self.seed,
            optimizer: match t.optimizer {
                OptimizerName::Adam => OptimizerKind::AdaptiveMoments,
                OptimizerName::Sgd => OptimizerKind::PlainGradientDescent,
            },
        }
    }

    pub fn mlp_config(&self) -> MlpConfig {
        MlpConfig {
            hidden_layers: self.train.hidden_layers.clone(),
            ..MlpConfig::default()
        }
    }

    /// The configuration as recorded in manifests.
    pub fn echo(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("configuration serializes")
    }
}

/// Read and parse a configuration file.
pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| PipelineError::Config(format!("cannot read {}: {e}", path.display())))?;
    RunConfig::parse(&text).map_err(|e| match e {
        PipelineError::Config(m) => PipelineError::Config(format!("{}: {m}", path.display())),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_gives_defaults() {
        let c = RunConfig::parse("").unwrap();
        assert_eq!(c, RunConfig::default());
        assert_eq!(c.source, ObjectiveSource::Paper);
        assert_eq!((c.grid.pressure_steps, c.grid.temperature_steps), (9, 9));
        assert_eq!(
            (c.ga.population_size, c.ga.generations, c.seed),
            (200, 200, 1)
        );
        assert_eq!(c.bounds().unwrap(), Bounds::default());
    }

    #[test]
    fn seed_reaches_every_component() {
        let c = RunConfig::parse("seed = 7").unwrap();
        assert_eq!(c.ga_config().seed, 7);
        assert_eq!(c.train_config().seed, 7);
    }

    #[test]
    fn dotted_and_table_forms_agree() {
        let a = RunConfig::parse("ga.generations = 10\nbounds.pressure = [1.0, 2.0]").unwrap();
        let b =
            RunConfig::parse("[ga]\ngenerations = 10\n[bounds]\npressure = [1.0, 2.0]").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.ga.generations, 10);
    }

    #[test]
    fn misspelled_key_is_named() {
        for (doc, key) in [
            ("sed = 3", "sed"),
            ("ga.populaton_size = 10", "populaton_size"),
        ] {
            match RunConfig::parse(doc) {
                Err(PipelineError::Config(m)) => assert!(m.contains(key), "{m}"),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn syntax_error_has_line_number() {
        match RunConfig::parse("seed = 1\n\npreset = \n") {
            Err(PipelineError::Config(m)) => assert!(m.contains("line 3"), "{m}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn invalid_values() {
        for doc in [
            "ga.population_size = 7",
            "bounds.pressure = [5.0, 1.0]",
            "grid.pressure_steps = 1",
            "operating_voltage = -0.1",
            "train.epochs = 0",
            "preset = \"octagonal\"",
            "source = \"oracle\"",
            "polarize.voltages = []",
        ] {
            assert!(
                matches!(RunConfig::parse(doc), Err(PipelineError::Config(_))),
                "{doc}"
            );
        }
    }

    #[test]
    fn echo_omits_output_dir() {
        let c = RunConfig::parse("output_dir = \"/tmp/somewhere\"").unwrap();
        assert!(c.echo().get("output_dir").is_none());
        assert_eq!(c.echo()["seed"], 1);
    }
}
