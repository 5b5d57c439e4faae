//! Property checks on the variation operators and run-level invariants.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use fcell_evolve::operators::{sbx_children, sbx_spread};
use fcell_evolve::{
    polynomial_mutation, run, sbx_crossover, Bounds, Evaluator, GAConfig, ObjectiveSpec,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bounds() -> impl Strategy<Value = Bounds> {
    (
        -10.0f64..10.0,
        1e-6f64..20.0,
        -10.0f64..100.0,
        1e-6f64..50.0,
    )
        .prop_map(|(p, dp, t, dt)| Bounds::new((p, p + dp), (t, t + dt)).unwrap())
}

fn inside(b: Bounds) -> impl Strategy<Value = (Bounds, [f64; 2], [f64; 2])> {
    let g = move || {
        (0.0f64..=1.0, 0.0f64..=1.0).prop_map(move |(u, v)| {
            [
                b.p_min + u * (b.p_max - b.p_min),
                b.t_min + v * (b.t_max - b.t_min),
            ]
        })
    };
    (Just(b), g(), g()).prop_map(|(b, x, y)| (b, b.clamp(x), b.clamp(y)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn sbx_preserves_gene_sum(x1 in -1e3f64..1e3, x2 in -1e3f64..1e3, u in 0.0f64..1.0, eta in 0.0f64..50.0) {
        let (c1, c2) = sbx_children(x1, x2, sbx_spread(u, eta));
        let scale = x1.abs().max(x2.abs()).max(1.0);
        prop_assert!(((c1 + c2) - (x1 + x2)).abs() <= 1e-12 * scale * sbx_spread(u, eta).max(1.0));
    }

    #[test]
    fn children_stay_in_bounds((b, x, y) in bounds().prop_flat_map(inside), seed in any::<u64>()) {
        let c = GAConfig { crossover_probability: 1.0, mutation_probability: 1.0, ..GAConfig::default() };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (c1, c2) = sbx_crossover(&x, &y, &b, &c, &mut rng);
        prop_assert!(b.contains(&c1) && b.contains(&c2));
        let m1 = polynomial_mutation(&c1, &b, &c, &mut rng);
        prop_assert!(b.contains(&m1));
    }
}

#[test]
fn mutation_stays_in_bounds_over_many_draws() {
    let b = Bounds::default();
    let c = GAConfig {
        mutation_probability: 1.0,
        ..GAConfig::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut g = [3.0, 70.0];
    for _ in 0..10_000 {
        g = polynomial_mutation(&g, &b, &c, &mut rng);
        assert!(b.contains(&g));
    }
}

/// Fails loudly if the optimizer ever asks for a point outside the box.
struct Fenced {
    bounds: Bounds,
    calls: Arc<AtomicUsize>,
    f: fn(f64, f64) -> f64,
}

impl Evaluator for Fenced {
    fn evaluate(&self, p: f64, t: f64) -> Result<f64, String> {
        self.calls.fetch_add(1, Ordering::Relaxed);
        if !self.bounds.contains(&[p, t]) {
            return Err(format!("({p}, {t}) escaped the bounds"));
        }
        Ok((self.f)(p, t))
    }
}

#[test]
fn every_evaluated_individual_is_feasible() {
    let bounds = Bounds::new((1.0, 1.5), (60.0, 61.0)).unwrap();
    let calls = Arc::new(AtomicUsize::new(0));
    let spec = ObjectiveSpec::power(
        Fenced {
            bounds,
            calls: calls.clone(),
            f: |p, t| p * t,
        },
        Fenced {
            bounds,
            calls: calls.clone(),
            f: |p, t| p + t,
        },
    );
    let c = GAConfig {
        population_size: 60,
        generations: 40,
        ..GAConfig::default()
    };
    let r = run(&spec, &bounds, &c).unwrap();
    assert_eq!(calls.load(Ordering::Relaxed), 2 * r.evaluations);
    assert!(r.members.iter().all(|m| bounds.contains(&m.genes)));
}
