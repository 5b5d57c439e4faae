//! Backpropagation against central finite differences.

use fcell_surrogate::{Mlp, MlpConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const STEP: f64 = 1e-6;
const TOLERANCE: f64 = 1e-4;

fn finite_difference(net: &Mlp, batch: &[(Vec<f64>, Vec<f64>)]) -> Vec<f64> {
    let base = net.parameters();
    let mut probe = net.clone();
    (0..base.len())
        .map(|k| {
            let mut p = base.clone();
            p[k] = base[k] + STEP;
            probe.set_parameters(&p).unwrap();
            let up = probe.loss(batch).unwrap();
            p[k] = base[k] - STEP;
            probe.set_parameters(&p).unwrap();
            let down = probe.loss(batch).unwrap();
            (up - down) / (2.0 * STEP)
        })
        .collect()
}

/// Central differences cannot resolve a derivative below the rounding noise of
/// the two loss evaluations, roughly a few ulps of the loss divided by the step.
fn resolution(loss: f64) -> f64 {
    8.0 * f64::EPSILON * loss.abs() / STEP
}

fn agrees(a: f64, n: f64, loss: f64) -> bool {
    let diff = (a - n).abs();
    diff <= TOLERANCE * a.abs().max(n.abs()) || diff <= resolution(loss)
}

#[test]
fn backprop_matches_finite_differences_on_random_networks() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..10u64 {
        let mut net = Mlp::init(&MlpConfig::default(), 100 + trial).unwrap();
        let mut params = net.parameters();
        for p in params.iter_mut() {
            *p += rng.random_range(-0.1..0.1);
        }
        net.set_parameters(&params).unwrap();
        let batch: Vec<(Vec<f64>, Vec<f64>)> = (0..8)
            .map(|_| {
                (
                    vec![rng.random::<f64>(), rng.random::<f64>()],
                    vec![rng.random::<f64>()],
                )
            })
            .collect();
        let analytic = net.gradients(&batch).unwrap().flatten();
        let numeric = finite_difference(&net, &batch);
        let loss = net.loss(&batch).unwrap();
        for (k, (a, n)) in analytic.iter().zip(&numeric).enumerate() {
            assert!(
                agrees(*a, *n, loss),
                "trial {trial}, parameter {k}: backprop {a:e}, finite difference {n:e}"
            );
        }
    }
}
