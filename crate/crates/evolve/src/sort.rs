//! Pareto dominance, fast non-dominated sorting and crowding distance.

use std::cmp::Ordering;

use crate::{EvolveError, Individual, Result};

/// `a` dominates `b` in minimization sense.
pub fn dominates(a: &[f64], b: &[f64]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(EvolveError::Contract(format!(
            "cannot compare objective vectors of arity {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(dominates_unchecked(a, b))
}

fn dominates_unchecked(a: &[f64], b: &[f64]) -> bool {
    let mut strictly = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        strictly |= x < y;
    }
    strictly
}

/// Partition objective vectors into successive non-dominated fronts (indices in
/// ascending order within each front).
pub fn nondominated_fronts(objectives: &[&[f64]]) -> Result<Vec<Vec<usize>>> {
    let Some(first) = objectives.first() else {
        return Ok(Vec::new());
    };
    let m = first.len();
    for (k, o) in objectives.iter().enumerate() {
        if o.is_empty() {
            return Err(EvolveError::Contract(format!(
                "individual {k} is not evaluated"
            )));
        }
        if o.len() != m {
            return Err(EvolveError::Contract(format!(
                "individual {k} has {} objectives, expected {m}",
                o.len()
            )));
        }
        if o.iter().any(|v| !v.is_finite()) {
            return Err(EvolveError::Contract(format!(
                "individual {k} has non-finite objectives {o:?}"
            )));
        }
    }

    let n = objectives.len();
    let mut dominated_by = vec![0usize; n];
    let mut dominating: Vec<Vec<usize>> = vec![Vec::new(); n];
    for p in 0..n {
        for q in (p + 1)..n {
            if dominates_unchecked(objectives[p], objectives[q]) {
                dominating[p].push(q);
                dominated_by[q] += 1;
            } else if dominates_unchecked(objectives[q], objectives[p]) {
                dominating[q].push(p);
                dominated_by[p] += 1;
            }
        }
    }

    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&k| dominated_by[k] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &p in &current {
            for &q in &dominating[p] {
                dominated_by[q] -= 1;
                if dominated_by[q] == 0 {
                    next.push(q);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    Ok(fronts)
}

/// Sort `population` into fronts and set each individual's rank to its front index.
pub fn fast_nondominated_sort(population: &mut [Individual]) -> Result<Vec<Vec<usize>>> {
    let objectives: Vec<&[f64]> = population.iter().map(|i| i.objectives.as_slice()).collect();
    let fronts = nondominated_fronts(&objectives)?;
    for (rank, front) in fronts.iter().enumerate() {
        for &k in front {
            population[k].rank = rank;
        }
    }
    Ok(fronts)
}

/// Crowding distance of each member of one front. Boundary members of every
/// objective are infinite; an objective with zero range contributes nothing.
#[allow(clippy::needless_range_loop)] // `m` indexes columns, not `front`
pub fn crowding_distance(front: &[&[f64]]) -> Vec<f64> {
    let n = front.len();
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    let mut distance = vec![0.0; n];
    let mut order: Vec<usize> = (0..n).collect();
    for m in 0..front[0].len() {
        order.sort_by(|&a, &b| front[a][m].total_cmp(&front[b][m]).then(a.cmp(&b)));
        let lo = front[order[0]][m];
        let hi = front[order[n - 1]][m];
        distance[order[0]] = f64::INFINITY;
        distance[order[n - 1]] = f64::INFINITY;
        let range = hi - lo;
        if range <= 0.0 {
            continue;
        }
        for w in 1..n - 1 {
            let gap = front[order[w + 1]][m] - front[order[w - 1]][m];
            distance[order[w]] += gap / range;
        }
    }
    distance
}

/// Set the crowding distance of every individual, front by front.
pub fn assign_crowding(population: &mut [Individual], fronts: &[Vec<usize>]) {
    for front in fronts {
        let objectives: Vec<&[f64]> = front
            .iter()
            .map(|&k| population[k].objectives.as_slice())
            .collect();
        let d = crowding_distance(&objectives);
        for (&k, d) in front.iter().zip(d) {
            population[k].crowding = d;
        }
    }
}

/// Crowded comparison: lower rank first, then larger crowding distance.
pub fn crowded_order(a: &Individual, b: &Individual) -> Ordering {
    a.rank
        .cmp(&b.rank)
        .then_with(|| b.crowding.total_cmp(&a.crowding))
}
