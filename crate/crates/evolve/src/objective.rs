use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{EvolveError, Individual, Result, NUM_VARIABLES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sense {
    Minimize,
    Maximize,
}

impl Sense {
    /// Map a user-facing value into minimization sense.
    pub fn internal(self, value: f64) -> f64 {
        match self {
            Sense::Minimize => value,
            Sense::Maximize => -value,
        }
    }

    /// Inverse of [`Sense::internal`].
    pub fn restore(self, value: f64) -> f64 {
        self.internal(value)
    }
}

/// A scalar function of `(P [atm], T [°C])`. Failures carry a message and abort
/// the evaluation that hit them.
pub trait Evaluator: Send + Sync {
    fn evaluate(&self, pressure: f64, temperature: f64) -> std::result::Result<f64, String>;
}

impl<F> Evaluator for F
where
    F: Fn(f64, f64) -> f64 + Send + Sync,
{
    fn evaluate(&self, pressure: f64, temperature: f64) -> std::result::Result<f64, String> {
        Ok(self(pressure, temperature))
    }
}

pub struct Objective {
    pub name: String,
    pub sense: Sense,
    evaluator: Box<dyn Evaluator>,
}

impl Objective {
    pub fn new(name: impl Into<String>, sense: Sense, evaluator: impl Evaluator + 'static) -> Self {
        Objective {
            name: name.into(),
            sense,
            evaluator: Box::new(evaluator),
        }
    }

    pub fn evaluate(&self, pressure: f64, temperature: f64) -> std::result::Result<f64, String> {
        self.evaluator.evaluate(pressure, temperature)
    }
}

impl fmt::Debug for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Objective")
            .field("name", &self.name)
            .field("sense", &self.sense)
            .finish_non_exhaustive()
    }
}

#[derive(Debug)]
pub struct ObjectiveSpec {
    objectives: Vec<Objective>,
}

impl ObjectiveSpec {
    pub fn new(objectives: Vec<Objective>) -> Result<Self> {
        if objectives.is_empty() {
            return Err(EvolveError::Config(
                "at least one objective is required".into(),
            ));
        }
        Ok(ObjectiveSpec { objectives })
    }

    /// Maximize production power, minimize consumption power.
    pub fn power(
        production: impl Evaluator + 'static,
        consumption: impl Evaluator + 'static,
    ) -> Self {
        ObjectiveSpec {
            objectives: vec![
                Objective::new("production", Sense::Maximize, production),
                Objective::new("consumption", Sense::Minimize, consumption),
            ],
        }
    }

    pub fn len(&self) -> usize {
        self.objectives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objectives.is_empty()
    }

    pub fn objectives(&self) -> &[Objective] {
        &self.objectives
    }

    pub fn senses(&self) -> Vec<Sense> {
        self.objectives.iter().map(|o| o.sense).collect()
    }

    /// True for the (maximize production, minimize consumption) layout.
    pub fn is_power_pair(&self) -> bool {
        self.senses() == [Sense::Maximize, Sense::Minimize]
    }

    /// Objective vector in minimization sense for the individual at `index`.
    pub fn evaluate_genes(&self, index: usize, genes: &[f64; NUM_VARIABLES]) -> Result<Vec<f64>> {
        let [pressure, temperature] = *genes;
        self.objectives
            .iter()
            .map(|o| {
                let fail = |message: String| EvolveError::Evaluation {
                    index,
                    pressure,
                    temperature,
                    objective: o.name.clone(),
                    message,
                };
                let v = o.evaluate(pressure, temperature).map_err(fail)?;
                if !v.is_finite() {
                    return Err(fail(format!("non-finite value {v}")));
                }
                Ok(o.sense.internal(v))
            })
            .collect()
    }
}

/// How objective evaluations are scheduled. Results are merged in individual
/// order either way, so the choice never changes the outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Execution {
    Sequential,
    /// Rayon worker pool; runs sequentially when built without the `parallel` feature.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Map `f` over `items` in order, fanning out when asked to. The first error by index wins.
pub(crate) fn map_ordered<T, U, F>(items: &[T], execution: Execution, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(usize, &T) -> U + Sync + Send,
{
    match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().enumerate().map(|(k, x)| f(k, x)).collect()
        }
        _ => items.iter().enumerate().map(|(k, x)| f(k, x)).collect(),
    }
}

/// Set the objectives of every individual. Errors name the lowest failing index.
pub fn evaluate(
    population: &mut [Individual],
    spec: &ObjectiveSpec,
    execution: Execution,
) -> Result<()> {
    let values = map_ordered(population, execution, |k, ind| {
        spec.evaluate_genes(k, &ind.genes)
    });
    for (ind, v) in population.iter_mut().zip(values) {
        ind.objectives = v?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pentagonal() -> ObjectiveSpec {
        // Published pentagonal production/consumption surfaces, (P atm, T °C) -> W.
        let q = |c: [f64; 6]| {
            move |p: f64, t: f64| {
                c[0] * p * p + c[1] * p * t + c[2] * p + c[3] * t * t + c[4] * t + c[5]
            }
        };
        ObjectiveSpec::power(
            q([
                3.266e-6, 5.816e-8, -3.127e-5, -1.928e-8, 2.936e-6, -3.027e-5,
            ]),
            q([
                -5.112e-9, -4.847e-10, 6.669e-8, 5.415e-11, -4.154e-9, 1.172e-7,
            ]),
        )
    }

    #[test]
    fn power_pair_in_minimization_sense() {
        let mut pop = vec![Individual::new([1.0, 77.645])];
        evaluate(&mut pop, &pentagonal(), Execution::Sequential).unwrap();
        // Hand evaluation of the two polynomials at (1, 77.645).
        let p = 3.266e-6 + 5.816e-8 * 77.645 - 3.127e-5 - 1.928e-8 * 77.645f64.powi(2)
            + 2.936e-6 * 77.645
            - 3.027e-5;
        let c = -5.112e-9 - 4.847e-10 * 77.645 + 6.669e-8 + 5.415e-11 * 77.645f64.powi(2)
            - 4.154e-9 * 77.645
            + 1.172e-7;
        assert_eq!(pop[0].objectives, vec![-p, c]);
        assert!((pop[0].objectives[0] + 5.797e-5).abs() < 5e-9);
        assert!((pop[0].objectives[1] - 1.4506e-7).abs() < 5e-11);
    }

    #[test]
    fn non_finite_output_names_individual() {
        let spec = ObjectiveSpec::power(
            |p: f64, _t: f64| if p > 2.0 { f64::NAN } else { 1.0 },
            |_: f64, _: f64| 0.0,
        );
        let mut pop = vec![
            Individual::new([1.0, 60.0]),
            Individual::new([3.0, 60.0]),
            Individual::new([4.0, 60.0]),
        ];
        match evaluate(&mut pop, &spec, Execution::Parallel) {
            Err(EvolveError::Evaluation {
                index, objective, ..
            }) => {
                assert_eq!(index, 1);
                assert_eq!(objective, "production");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn constant_objective_shared() {
        let spec = ObjectiveSpec::power(|_: f64, _: f64| 2.0, |_: f64, _: f64| 3.0);
        let mut pop: Vec<_> = (0..10)
            .map(|k| Individual::new([1.0 + 0.1 * k as f64, 60.0]))
            .collect();
        evaluate(&mut pop, &spec, Execution::default()).unwrap();
        assert!(pop.iter().all(|i| i.objectives == [-2.0, 3.0]));
    }

    #[test]
    fn execution_modes_agree() {
        let spec = pentagonal();
        let mut a: Vec<_> = (0..64)
            .map(|k| Individual::new([1.0 + 0.06 * k as f64, 50.0 + 0.6 * k as f64]))
            .collect();
        let mut b = a.clone();
        evaluate(&mut a, &spec, Execution::Sequential).unwrap();
        evaluate(&mut b, &spec, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
