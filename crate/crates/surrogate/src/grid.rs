use crate::{Result, SurrogateError};

/// Evenly spaced values over `[lo, hi]` including both ends.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let last = (steps - 1) as f64;
    (0..steps)
        .map(|k| {
            if k + 1 == steps {
                hi
            } else {
                lo + (hi - lo) * k as f64 / last
            }
        })
        .collect()
}

/// Cartesian `(P, T)` grid, pressure outer and temperature inner.
pub fn design_grid(
    p_bounds: (f64, f64),
    t_bounds: (f64, f64),
    p_steps: usize,
    t_steps: usize,
) -> Result<Vec<(f64, f64)>> {
    if p_steps < 2 || t_steps < 2 {
        return Err(SurrogateError::Domain(format!(
            "grid needs at least 2 steps per axis (got {p_steps} x {t_steps})"
        )));
    }
    for (name, (lo, hi)) in [("pressure", p_bounds), ("temperature", t_bounds)] {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(SurrogateError::Domain(format!(
                "{name} bounds must be finite and ordered (got {lo}, {hi})"
            )));
        }
    }
    let ts = linspace(t_bounds.0, t_bounds.1, t_steps);
    Ok(linspace(p_bounds.0, p_bounds.1, p_steps)
        .into_iter()
        .flat_map(|p| ts.iter().map(move |&t| (p, t)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_by_two() {
        let g = design_grid((1.0, 5.0), (50.0, 90.0), 5, 2).unwrap();
        assert_eq!(g.len(), 10);
        assert_eq!(
            g,
            vec![
                (1.0, 50.0),
                (1.0, 90.0),
                (2.0, 50.0),
                (2.0, 90.0),
                (3.0, 50.0),
                (3.0, 90.0),
                (4.0, 50.0),
                (4.0, 90.0),
                (5.0, 50.0),
                (5.0, 90.0)
            ]
        );
    }

    #[test]
    fn corners_only() {
        let g = design_grid((1.0, 5.0), (50.0, 90.0), 2, 2).unwrap();
        assert_eq!(g, vec![(1.0, 50.0), (1.0, 90.0), (5.0, 50.0), (5.0, 90.0)]);
    }

    #[test]
    fn row_major_and_deterministic() {
        let a = design_grid((1.0, 5.0), (50.0, 90.0), 9, 9).unwrap();
        let b = design_grid((1.0, 5.0), (50.0, 90.0), 9, 9).unwrap();
        assert_eq!(a, b);
        let mut sorted = a.clone();
        sorted.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
        assert_eq!(a, sorted);
        assert_eq!(a[80], (5.0, 90.0));
    }

    #[test]
    fn too_few_steps() {
        assert!(design_grid((1.0, 5.0), (50.0, 90.0), 1, 9).is_err());
        assert!(design_grid((5.0, 1.0), (50.0, 90.0), 3, 3).is_err());
    }
}
