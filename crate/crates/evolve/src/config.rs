use serde::{Deserialize, Serialize};

use crate::{EvolveError, Result};

/// Number of design variables: pressure and temperature.
pub const NUM_VARIABLES: usize = 2;

/// Box constraints on `(P [atm], T [°C])`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub p_min: f64,
    pub p_max: f64,
    pub t_min: f64,
    pub t_max: f64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            p_min: 1.0,
            p_max: 5.0,
            t_min: 50.0,
            t_max: 90.0,
        }
    }
}

impl Bounds {
    pub fn new(pressure: (f64, f64), temperature: (f64, f64)) -> Result<Self> {
        let b = Bounds {
            p_min: pressure.0,
            p_max: pressure.1,
            t_min: temperature.0,
            t_max: temperature.1,
        };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, lo, hi) in [
            ("pressure", self.p_min, self.p_max),
            ("temperature", self.t_min, self.t_max),
        ] {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(EvolveError::Config(format!(
                    "{name} bounds must be finite with min < max (got {lo}, {hi})"
                )));
            }
        }
        Ok(())
    }

    pub fn lower(&self) -> [f64; NUM_VARIABLES] {
        [self.p_min, self.t_min]
    }

    pub fn upper(&self) -> [f64; NUM_VARIABLES] {
        [self.p_max, self.t_max]
    }

    pub fn contains(&self, genes: &[f64; NUM_VARIABLES]) -> bool {
        let (lo, hi) = (self.lower(), self.upper());
        (0..NUM_VARIABLES).all(|k| genes[k] >= lo[k] && genes[k] <= hi[k])
    }

    pub fn clamp(&self, genes: [f64; NUM_VARIABLES]) -> [f64; NUM_VARIABLES] {
        let (lo, hi) = (self.lower(), self.upper());
        std::array::from_fn(|k| genes[k].clamp(lo[k], hi[k]))
    }
}

/// NSGA-II parameters. Defaults: population 200, 200 generations, seed 1,
/// SBX with probability 0.9 and index 15, polynomial mutation with per-gene
/// probability 1/2 and index 20.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GAConfig {
    pub population_size: usize,
    pub generations: usize,
    pub seed: u64,
    pub crossover_probability: f64,
    pub crossover_index: f64,
    pub mutation_probability: f64,
    pub mutation_index: f64,
}

impl Default for GAConfig {
    fn default() -> Self {
        GAConfig {
            population_size: 200,
            generations: 200,
            seed: 1,
            crossover_probability: 0.9,
            crossover_index: 15.0,
            mutation_probability: 1.0 / NUM_VARIABLES as f64,
            mutation_index: 20.0,
        }
    }
}

impl GAConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 4 || !self.population_size.is_multiple_of(2) {
            return Err(EvolveError::Config(format!(
                "population size must be even and >= 4 (got {})",
                self.population_size
            )));
        }
        if self.generations == 0 {
            return Err(EvolveError::Config("generations must be >= 1".into()));
        }
        for (name, p) in [
            ("crossover probability", self.crossover_probability),
            ("mutation probability", self.mutation_probability),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(EvolveError::Config(format!(
                    "{name} must lie in [0, 1] (got {p})"
                )));
            }
        }
        for (name, eta) in [
            ("crossover index", self.crossover_index),
            ("mutation index", self.mutation_index),
        ] {
            if !(eta >= 0.0 && eta.is_finite()) {
                return Err(EvolveError::Config(format!(
                    "{name} must be finite and >= 0 (got {eta})"
                )));
            }
        }
        Ok(())
    }
}
