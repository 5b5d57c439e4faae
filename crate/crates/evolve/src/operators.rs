//! Selection and variation operators. Every draw comes from the caller's generator;
//! the per-offspring-pair order is: two tournaments (two index draws each), one
//! crossover gate, then per gene a gate and a spread draw, then per child and gene a
//! mutation gate and, when it fires, a perturbation draw.

use std::cmp::Ordering;

use rand::Rng;

use crate::sort::crowded_order;
use crate::{Bounds, GAConfig, Individual, NUM_VARIABLES};

/// Probability that SBX recombines a given gene once crossover is applied.
pub const GENE_CROSSOVER_PROBABILITY: f64 = 0.5;

/// Binary tournament by crowded comparison. Ties go to the first draw.
pub fn tournament_select<R: Rng + ?Sized>(population: &[Individual], rng: &mut R) -> usize {
    let n = population.len() as u32;
    let a = rng.random_range(0..n) as usize;
    let b = rng.random_range(0..n) as usize;
    match crowded_order(&population[a], &population[b]) {
        Ordering::Greater => b,
        _ => a,
    }
}

/// SBX spread factor for a uniform draw `u` in `[0, 1)`.
pub fn sbx_spread(u: f64, eta: f64) -> f64 {
    let e = 1.0 / (eta + 1.0);
    if u <= 0.5 {
        (2.0 * u).powf(e)
    } else {
        (1.0 / (2.0 * (1.0 - u))).powf(e)
    }
}

/// Unclipped SBX children of one gene. `c1 + c2 = x1 + x2` up to rounding.
pub fn sbx_children(x1: f64, x2: f64, beta: f64) -> (f64, f64) {
    (
        0.5 * ((1.0 + beta) * x1 + (1.0 - beta) * x2),
        0.5 * ((1.0 - beta) * x1 + (1.0 + beta) * x2),
    )
}

/// Simulated binary crossover, clipped to `bounds`. Children copy the parents when
/// the crossover gate fails.
pub fn sbx_crossover<R: Rng + ?Sized>(
    parent1: &[f64; NUM_VARIABLES],
    parent2: &[f64; NUM_VARIABLES],
    bounds: &Bounds,
    config: &GAConfig,
    rng: &mut R,
) -> ([f64; NUM_VARIABLES], [f64; NUM_VARIABLES]) {
    let (mut c1, mut c2) = (*parent1, *parent2);
    if rng.random::<f64>() >= config.crossover_probability {
        return (c1, c2);
    }
    for k in 0..NUM_VARIABLES {
        if rng.random::<f64>() >= GENE_CROSSOVER_PROBABILITY {
            continue;
        }
        let beta = sbx_spread(rng.random(), config.crossover_index);
        if parent1[k] == parent2[k] {
            continue;
        }
        (c1[k], c2[k]) = sbx_children(parent1[k], parent2[k], beta);
    }
    (bounds.clamp(c1), bounds.clamp(c2))
}

/// Bounded polynomial mutation of one gene in `[lo, hi]` for a uniform draw `u`.
pub fn polynomial_perturbation(x: f64, lo: f64, hi: f64, u: f64, eta: f64) -> f64 {
    let width = hi - lo;
    let e = 1.0 / (eta + 1.0);
    let shift = if u < 0.5 {
        let xy = 1.0 - (x - lo) / width;
        let val = 2.0 * u + (1.0 - 2.0 * u) * xy.powf(eta + 1.0);
        val.powf(e) - 1.0
    } else {
        let xy = 1.0 - (hi - x) / width;
        let val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * xy.powf(eta + 1.0);
        1.0 - val.powf(e)
    };
    (x + shift * width).clamp(lo, hi)
}

pub fn polynomial_mutation<R: Rng + ?Sized>(
    genes: &[f64; NUM_VARIABLES],
    bounds: &Bounds,
    config: &GAConfig,
    rng: &mut R,
) -> [f64; NUM_VARIABLES] {
    let (lo, hi) = (bounds.lower(), bounds.upper());
    let mut out = *genes;
    for k in 0..NUM_VARIABLES {
        if rng.random::<f64>() < config.mutation_probability {
            let u: f64 = rng.random();
            out[k] = polynomial_perturbation(genes[k], lo[k], hi[k], u, config.mutation_index);
        }
    }
    out
}
