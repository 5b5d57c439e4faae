//! Bivariate quadratic response surfaces in raw `(atm, °C)` units.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::dataset::format_f64;
use crate::{Dataset, Objective, Result, SurrogateError};

/// `c_pp P^2 + c_pt P T + c_p P + c_tt T^2 + c_t T + c_0`, P in atm, T in °C, W out.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadraticSurface {
    pub c_pp: f64,
    pub c_pt: f64,
    pub c_p: f64,
    pub c_tt: f64,
    pub c_t: f64,
    pub c_0: f64,
}

pub const SURFACE_FORMAT_TAG: &str = "polycell-surface-v1";

impl QuadraticSurface {
    pub const ZERO: QuadraticSurface = QuadraticSurface::from_array([0.0; 6]);

    pub const fn from_array(c: [f64; 6]) -> Self {
        QuadraticSurface {
            c_pp: c[0],
            c_pt: c[1],
            c_p: c[2],
            c_tt: c[3],
            c_t: c[4],
            c_0: c[5],
        }
    }

    pub fn to_array(&self) -> [f64; 6] {
        [
            self.c_pp, self.c_pt, self.c_p, self.c_tt, self.c_t, self.c_0,
        ]
    }

    pub fn evaluate(&self, pressure: f64, temperature: f64) -> f64 {
        let (p, t) = (pressure, temperature);
        self.c_pp * p * p
            + self.c_pt * p * t
            + self.c_p * p
            + self.c_tt * t * t
            + self.c_t * t
            + self.c_0
    }

    /// Scale every coefficient, e.g. to flip the sense of an objective.
    pub fn scaled(&self, factor: f64) -> Self {
        Self::from_array(self.to_array().map(|c| c * factor))
    }

    /// Root-mean-square and maximum absolute residual against `dataset`.
    pub fn residuals(&self, dataset: &Dataset) -> (f64, f64) {
        let (sq, max) = dataset
            .samples()
            .iter()
            .fold((0.0, 0.0f64), |(sq, max), s| {
                let r = self.evaluate(s.pressure, s.temperature) - s.value;
                (sq + r * r, max.max(r.abs()))
            });
        ((sq / dataset.len() as f64).sqrt(), max)
    }

    /// JSON document with every coefficient printed to 17 significant digits.
    pub fn to_document(&self) -> String {
        let names = ["c_pp", "c_pt", "c_p", "c_tt", "c_t", "c_0"];
        let body: Vec<String> = names
            .iter()
            .zip(self.to_array())
            .map(|(n, c)| format!("    \"{n}\": {}", format_f64(c)))
            .collect();
        format!(
            "{{\n  \"format\": \"{SURFACE_FORMAT_TAG}\",\n  \"coefficients\": {{\n{}\n  }}\n}}\n",
            body.join(",\n")
        )
    }

    pub fn from_document(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Doc {
            format: String,
            coefficients: QuadraticSurface,
        }
        let doc: Doc = serde_json::from_str(text)?;
        if doc.format != SURFACE_FORMAT_TAG {
            return Err(SurrogateError::Format(format!(
                "unsupported surface format `{}`",
                doc.format
            )));
        }
        Ok(doc.coefficients)
    }
}

impl fmt::Display for QuadraticSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:e} P^2 {:+e} P T {:+e} P {:+e} T^2 {:+e} T {:+e}",
            self.c_pp, self.c_pt, self.c_p, self.c_tt, self.c_t, self.c_0
        )
    }
}

pub fn evaluate_surface(surface: &QuadraticSurface, pressure: f64, temperature: f64) -> f64 {
    surface.evaluate(pressure, temperature)
}

/// Least-squares fit with its residuals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticFit {
    pub surface: QuadraticSurface,
    pub rms_residual: f64,
    pub max_residual: f64,
}

/// Relative size below which a diagonal entry of `R` counts as zero.
const RANK_TOLERANCE: f64 = 1e-12;

/// Least-squares six-term quadratic through `dataset`.
///
/// Columns are scaled to unit norm and the system is solved through a Householder QR
/// factorization; the rank is read off the diagonal of `R`.
pub fn fit_quadratic(dataset: &Dataset) -> Result<QuadraticSurface> {
    const TERMS: usize = 6;
    let n = dataset.len();
    if n < TERMS {
        return Err(SurrogateError::RankDeficient {
            rank: n,
            needed: TERMS,
        });
    }
    let mut x = DMatrix::<f64>::from_fn(n, TERMS, |row, col| {
        let s = dataset.samples()[row];
        let (p, t) = (s.pressure, s.temperature);
        match col {
            0 => p * p,
            1 => p * t,
            2 => p,
            3 => t * t,
            4 => t,
            _ => 1.0,
        }
    });
    let y = DVector::from_iterator(n, dataset.samples().iter().map(|s| s.value));
    let norms: Vec<f64> = (0..TERMS).map(|c| x.column(c).norm()).collect();
    for (c, &norm) in norms.iter().enumerate() {
        if norm > 0.0 {
            x.column_mut(c).unscale_mut(norm);
        }
    }

    let qr = x.qr();
    let r = qr.r();
    let largest = (0..TERMS).map(|k| r[(k, k)].abs()).fold(0.0, f64::max);
    let rank = (0..TERMS)
        .filter(|&k| r[(k, k)].abs() > RANK_TOLERANCE * largest)
        .count();
    if rank < TERMS {
        return Err(SurrogateError::RankDeficient {
            rank,
            needed: TERMS,
        });
    }
    let qty = qr.q().transpose() * y;
    let beta = r
        .solve_upper_triangular(&qty)
        .ok_or(SurrogateError::RankDeficient {
            rank,
            needed: TERMS,
        })?;
    let mut c = [0.0; TERMS];
    for k in 0..TERMS {
        c[k] = beta[k] / norms[k];
    }
    Ok(QuadraticSurface::from_array(c))
}

/// [`fit_quadratic`] plus its residuals on the fitted data.
pub fn fit_quadratic_with_residuals(dataset: &Dataset) -> Result<QuadraticFit> {
    let surface = fit_quadratic(dataset)?;
    let (rms_residual, max_residual) = surface.residuals(dataset);
    Ok(QuadraticFit {
        surface,
        rms_residual,
        max_residual,
    })
}

/// Channel models with published objective polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PaperModel {
    Pentagonal,
    Hexagonal,
}

impl PaperModel {
    pub const ALL: [PaperModel; 2] = [PaperModel::Pentagonal, PaperModel::Hexagonal];

    pub fn name(self) -> &'static str {
        match self {
            PaperModel::Pentagonal => "pentagonal",
            PaperModel::Hexagonal => "hexagonal",
        }
    }
}

impl std::str::FromStr for PaperModel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "pentagonal" => Ok(PaperModel::Pentagonal),
            "hexagonal" => Ok(PaperModel::Hexagonal),
            other => Err(format!(
                "no published surfaces for `{other}` (expected pentagonal or hexagonal)"
            )),
        }
    }
}

impl fmt::Display for PaperModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub const PENTAGONAL_PRODUCTION: QuadraticSurface = QuadraticSurface::from_array([
    3.266e-6, 5.816e-8, -3.127e-5, -1.928e-8, 2.936e-6, -3.027e-5,
]);
pub const HEXAGONAL_PRODUCTION: QuadraticSurface =
    QuadraticSurface::from_array([3.82e-6, -6.802e-8, -2.82e-5, -9.945e-10, 5.052e-7, 5.251e-5]);
pub const PENTAGONAL_CONSUMPTION: QuadraticSurface = QuadraticSurface::from_array([
    -5.112e-9, -4.847e-10, 6.669e-8, 5.415e-11, -4.154e-9, 1.172e-7,
]);
pub const HEXAGONAL_CONSUMPTION: QuadraticSurface = QuadraticSurface::from_array([
    -1.111e-7, -1.365e-8, 1.68e-6, 2.4647e-9, -2.729e-7, 9.1835e-6,
]);

/// Published production/consumption polynomials of the optimized channel models.
pub fn paper_surface(model: PaperModel, objective: Objective) -> QuadraticSurface {
    match (model, objective) {
        (PaperModel::Pentagonal, Objective::Production) => PENTAGONAL_PRODUCTION,
        (PaperModel::Pentagonal, Objective::Consumption) => PENTAGONAL_CONSUMPTION,
        (PaperModel::Hexagonal, Objective::Production) => HEXAGONAL_PRODUCTION,
        (PaperModel::Hexagonal, Objective::Consumption) => HEXAGONAL_CONSUMPTION,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design_grid;
    use approx::assert_relative_eq;
    use fcell_core::ModelTag;

    fn sample(surface: &QuadraticSurface, steps: usize) -> Dataset {
        let g = design_grid((1.0, 5.0), (50.0, 90.0), steps, steps).unwrap();
        Dataset::from_fn(Objective::Production, ModelTag::Pentagonal, &g, |p, t| {
            surface.evaluate(p, t)
        })
        .unwrap()
    }

    #[test]
    fn published_coefficients() {
        let s = paper_surface(PaperModel::Pentagonal, Objective::Production);
        assert_eq!(
            s.to_array(),
            [3.266e-6, 5.816e-8, -3.127e-5, -1.928e-8, 2.936e-6, -3.027e-5]
        );
        let s = paper_surface(PaperModel::Hexagonal, Objective::Production);
        assert_eq!(
            s.to_array(),
            [3.82e-6, -6.802e-8, -2.82e-5, -9.945e-10, 5.052e-7, 5.251e-5]
        );
        let s = paper_surface(PaperModel::Hexagonal, Objective::Consumption);
        assert_eq!(
            s.to_array(),
            [-1.111e-7, -1.365e-8, 1.68e-6, 2.4647e-9, -2.729e-7, 9.1835e-6]
        );
        let s = paper_surface(PaperModel::Pentagonal, Objective::Consumption);
        assert_eq!(
            s.to_array(),
            [-5.112e-9, -4.847e-10, 6.669e-8, 5.415e-11, -4.154e-9, 1.172e-7]
        );
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(QuadraticSurface::ZERO.evaluate(3.0, 70.0), 0.0);
        // Independent arithmetic: term by term at (1, 77.645).
        let t: f64 = 77.645;
        let expected =
            3.266e-6 + 5.816e-8 * t - 3.127e-5 - 1.928e-8 * t * t + 2.936e-6 * t - 3.027e-5;
        let v = evaluate_surface(&PENTAGONAL_PRODUCTION, 1.0, t);
        assert_relative_eq!(v, expected, max_relative = 1e-12);
        assert!((v - 5.797e-5).abs() <= 1e-8);
        let v = evaluate_surface(&HEXAGONAL_CONSUMPTION, 1.0, 90.0);
        assert!((v - 4.927e-6).abs() <= 1e-9, "{v}");
    }

    #[test]
    fn constant_data_fits_intercept_only() {
        let s = fit_quadratic(&sample(
            &QuadraticSurface::from_array([0., 0., 0., 0., 0., 2.]),
            5,
        ))
        .unwrap();
        let c = s.to_array();
        assert!((c[5] - 2.0).abs() <= 1e-9);
        for &v in &c[..5] {
            assert!(v.abs() <= 1e-9, "{c:?}");
        }
    }

    #[test]
    fn recovers_published_surfaces() {
        for m in PaperModel::ALL {
            for o in [Objective::Production, Objective::Consumption] {
                let truth = paper_surface(m, o);
                let fit = fit_quadratic(&sample(&truth, 9)).unwrap();
                for (a, b) in fit.to_array().iter().zip(truth.to_array()) {
                    assert_relative_eq!(*a, b, max_relative = 1e-6);
                }
            }
        }
    }

    #[test]
    fn underdetermined_is_rank_error() {
        let d = sample(&PENTAGONAL_PRODUCTION, 2);
        let five = Dataset::new(d.objective, d.model_tag, {
            let mut s = d.samples().to_vec();
            s.push(crate::Sample {
                pressure: 3.0,
                temperature: 70.0,
                value: 0.0,
            });
            s
        })
        .unwrap();
        assert!(matches!(
            fit_quadratic(&five),
            Err(SurrogateError::RankDeficient { .. })
        ));
    }

    #[test]
    fn collinear_design_is_rank_error() {
        let g: Vec<(f64, f64)> = (0..10).map(|k| (2.0, 50.0 + k as f64)).collect();
        let d = Dataset::from_fn(Objective::Production, ModelTag::Cubic, &g, |_, t| t).unwrap();
        assert!(matches!(
            fit_quadratic(&d),
            Err(SurrogateError::RankDeficient { .. })
        ));
    }

    #[test]
    fn document_round_trip() {
        let text = HEXAGONAL_PRODUCTION.to_document();
        let digits = text
            .lines()
            .find(|l| l.contains("\"c_pp\""))
            .and_then(|l| l.split(": ").nth(1))
            .map(|v| v.split('e').next().unwrap().replace(['.', '-'], "").len());
        assert_eq!(digits, Some(17));
        assert_eq!(
            QuadraticSurface::from_document(&text).unwrap(),
            HEXAGONAL_PRODUCTION
        );
    }
}
