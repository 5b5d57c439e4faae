use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::operators::{polynomial_mutation, sbx_crossover, tournament_select};
use crate::sort::{assign_crowding, crowded_order, fast_nondominated_sort};
use crate::{
    evaluate, init_population, Bounds, Execution, GAConfig, Individual, ObjectiveSpec, Result,
    Sense,
};

/// Generator behind every stochastic draw of a run.
pub type Generator = ChaCha8Rng;
pub const GENERATOR_NAME: &str = "ChaCha8Rng (rand_chacha 0.9), seed_from_u64";

/// Final non-dominated set of a run, in the caller's objective signs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParetoResult {
    /// Distinct front members, best first on objective 0 (ties: lower P, then lower T).
    pub members: Vec<Individual>,
    pub senses: Vec<Sense>,
    /// Index into `members` of the best point for each objective.
    pub extremes: Vec<usize>,
    /// Best objective-0 value in the population after each generation, minimization
    /// sense; entry 0 is the initial population.
    pub best_history: Vec<f64>,
    pub evaluations: usize,
}

impl ParetoResult {
    pub fn extreme(&self, objective: usize) -> &Individual {
        &self.members[self.extremes[objective]]
    }
}

/// Lower P first, then lower T.
fn gene_order(a: &Individual, b: &Individual) -> std::cmp::Ordering {
    a.genes[0]
        .total_cmp(&b.genes[0])
        .then(a.genes[1].total_cmp(&b.genes[1]))
}

fn best_first(population: &[Individual]) -> f64 {
    population
        .iter()
        .map(|i| i.objectives[0])
        .fold(f64::INFINITY, f64::min)
}

/// Run NSGA-II with the default execution mode.
pub fn run(spec: &ObjectiveSpec, bounds: &Bounds, config: &GAConfig) -> Result<ParetoResult> {
    run_with(spec, bounds, config, Execution::default())
}

pub fn run_with(
    spec: &ObjectiveSpec,
    bounds: &Bounds,
    config: &GAConfig,
    execution: Execution,
) -> Result<ParetoResult> {
    config.validate()?;
    bounds.validate()?;
    let n = config.population_size;
    let mut rng = Generator::seed_from_u64(config.seed);

    let mut population = init_population(bounds, config, &mut rng)?;
    evaluate(&mut population, spec, execution)?;
    let mut evaluations = n;
    let fronts = fast_nondominated_sort(&mut population)?;
    assign_crowding(&mut population, &fronts);
    let mut best_history = Vec::with_capacity(config.generations + 1);
    best_history.push(best_first(&population));

    for _ in 0..config.generations {
        let mut offspring = Vec::with_capacity(n);
        while offspring.len() < n {
            let a = tournament_select(&population, &mut rng);
            let b = tournament_select(&population, &mut rng);
            let (c1, c2) = sbx_crossover(
                &population[a].genes,
                &population[b].genes,
                bounds,
                config,
                &mut rng,
            );
            let c1 = polynomial_mutation(&c1, bounds, config, &mut rng);
            let c2 = polynomial_mutation(&c2, bounds, config, &mut rng);
            offspring.push(Individual::new(c1));
            offspring.push(Individual::new(c2));
        }
        evaluate(&mut offspring, spec, execution)?;
        evaluations += n;

        let mut combined = population;
        combined.append(&mut offspring);
        let fronts = fast_nondominated_sort(&mut combined)?;
        assign_crowding(&mut combined, &fronts);
        let mut keep = Vec::with_capacity(n);
        for front in fronts {
            if keep.len() + front.len() <= n {
                keep.extend(front);
                if keep.len() == n {
                    break;
                }
            } else {
                let mut front = front;
                front.sort_by(|&x, &y| crowded_order(&combined[x], &combined[y]).then(x.cmp(&y)));
                keep.extend(front.into_iter().take(n - keep.len()));
                break;
            }
        }
        keep.sort_unstable();
        population = keep.into_iter().map(|k| combined[k].clone()).collect();
        best_history.push(best_first(&population));
    }

    let fronts = fast_nondominated_sort(&mut population)?;
    assign_crowding(&mut population, &fronts);
    let senses = spec.senses();
    let mut members: Vec<Individual> = fronts[0]
        .iter()
        .map(|&k| {
            let mut ind = population[k].clone();
            for (v, s) in ind.objectives.iter_mut().zip(&senses) {
                *v = s.restore(*v);
            }
            ind
        })
        .collect();
    let internal = |ind: &Individual, m: usize| senses[m].internal(ind.objectives[m]);
    members.sort_by(|a, b| {
        internal(a, 0)
            .total_cmp(&internal(b, 0))
            .then_with(|| gene_order(a, b))
    });
    members.dedup_by(|a, b| a.genes == b.genes);
    let extremes = (0..senses.len())
        .map(|m| {
            (0..members.len())
                .min_by(|&a, &b| {
                    internal(&members[a], m)
                        .total_cmp(&internal(&members[b], m))
                        .then_with(|| gene_order(&members[a], &members[b]))
                })
                .expect("front 0 is never empty")
        })
        .collect();

    Ok(ParetoResult {
        members,
        senses,
        extremes,
        best_history,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bowl() -> ObjectiveSpec {
        ObjectiveSpec::power(
            |p: f64, t: f64| 10.0 - (p - 2.0).powi(2) - 0.01 * (t - 70.0).powi(2),
            |p: f64, t: f64| p + 0.1 * t,
        )
    }

    fn small() -> GAConfig {
        GAConfig {
            population_size: 40,
            generations: 30,
            ..GAConfig::default()
        }
    }

    #[test]
    fn front_is_mutually_nondominated() {
        let r = run(&bowl(), &Bounds::default(), &small()).unwrap();
        let senses = &r.senses;
        for a in &r.members {
            for b in &r.members {
                let ia: Vec<f64> = a
                    .objectives
                    .iter()
                    .zip(senses)
                    .map(|(v, s)| s.internal(*v))
                    .collect();
                let ib: Vec<f64> = b
                    .objectives
                    .iter()
                    .zip(senses)
                    .map(|(v, s)| s.internal(*v))
                    .collect();
                assert!(!crate::dominates(&ia, &ib).unwrap());
            }
        }
        assert_eq!(r.extremes[0], 0);
        assert_eq!(r.best_history.len(), 31);
        assert_eq!(r.evaluations, 40 * 31);
    }

    #[test]
    fn signs_are_restored() {
        let r = run(&bowl(), &Bounds::default(), &small()).unwrap();
        let top = r.extreme(0);
        assert!(top.objectives[0] > 9.0, "{top:?}");
        assert!(r
            .members
            .windows(2)
            .all(|w| w[0].objectives[0] >= w[1].objectives[0]));
    }

    #[test]
    fn invalid_config_is_rejected() {
        let c = GAConfig {
            population_size: 5,
            ..GAConfig::default()
        };
        assert!(run(&bowl(), &Bounds::default(), &c).is_err());
    }
}
