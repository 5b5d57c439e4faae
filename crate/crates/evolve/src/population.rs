use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{Bounds, GAConfig, Result, NUM_VARIABLES};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Individual {
    /// `[P (atm), T (°C)]`.
    pub genes: [f64; NUM_VARIABLES],
    /// Empty until evaluated. Minimization sense inside the optimizer.
    pub objectives: Vec<f64>,
    pub rank: usize,
    pub crowding: f64,
}

impl Individual {
    pub fn new(genes: [f64; NUM_VARIABLES]) -> Self {
        Individual {
            genes,
            objectives: Vec::new(),
            rank: 0,
            crowding: 0.0,
        }
    }

    pub fn is_evaluated(&self) -> bool {
        !self.objectives.is_empty()
    }

    pub fn pressure(&self) -> f64 {
        self.genes[0]
    }

    pub fn temperature(&self) -> f64 {
        self.genes[1]
    }
}

/// Uniform random individuals, drawing P then T for each in turn.
pub fn init_population<R: Rng + ?Sized>(
    bounds: &Bounds,
    config: &GAConfig,
    rng: &mut R,
) -> Result<Vec<Individual>> {
    bounds.validate()?;
    config.validate()?;
    let (lo, hi) = (bounds.lower(), bounds.upper());
    Ok((0..config.population_size)
        .map(|_| {
            let genes = std::array::from_fn(|k| {
                let u: f64 = rng.random();
                (lo[k] + u * (hi[k] - lo[k])).min(hi[k])
            });
            Individual::new(genes)
        })
        .collect())
}
