//! Exhaustive lattice search, used as an oracle for the optimizer.

use serde::{Deserialize, Serialize};

use crate::objective::map_ordered;
use crate::{Bounds, EvolveError, Execution, ObjectiveSpec, Result};

/// Best lattice point for one objective, in the caller's sign.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridOptimum {
    pub genes: [f64; 2],
    pub value: f64,
}

fn axis(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|k| {
            if k + 1 == steps {
                hi
            } else {
                lo + (hi - lo) * k as f64 / (steps - 1) as f64
            }
        })
        .collect()
}

/// Evaluate every objective on a `p_steps x t_steps` lattice spanning `bounds` and
/// return the best point of each. Ties go to the lower P, then the lower T.
pub fn grid_search(
    spec: &ObjectiveSpec,
    bounds: &Bounds,
    p_steps: usize,
    t_steps: usize,
    execution: Execution,
) -> Result<Vec<GridOptimum>> {
    bounds.validate()?;
    if p_steps < 2 || t_steps < 2 {
        return Err(EvolveError::Config(format!(
            "grid needs at least 2 steps per axis (got {p_steps} x {t_steps})"
        )));
    }
    let ps = axis(bounds.p_min, bounds.p_max, p_steps);
    let ts = axis(bounds.t_min, bounds.t_max, t_steps);
    let rows = map_ordered(&ps, execution, |row, &p| {
        ts.iter()
            .enumerate()
            .map(|(col, &t)| spec.evaluate_genes(row * t_steps + col, &[p, t]))
            .collect::<Result<Vec<_>>>()
    });

    let senses = spec.senses();
    let mut best: Vec<Option<(f64, [f64; 2])>> = vec![None; senses.len()];
    for (row, values) in rows.into_iter().enumerate() {
        for (col, v) in values?.into_iter().enumerate() {
            for (m, slot) in best.iter_mut().enumerate() {
                if slot.is_none_or(|(b, _)| v[m] < b) {
                    *slot = Some((v[m], [ps[row], ts[col]]));
                }
            }
        }
    }
    Ok(best
        .into_iter()
        .zip(&senses)
        .map(|(b, s)| {
            let (v, genes) = b.expect("lattice is non-empty");
            GridOptimum {
                genes,
                value: s.restore(v),
            }
        })
        .collect())
}
