use std::path::PathBuf;
use std::time::Instant;

use fcell_core::ModelTag;
use fcell_evolve::{
    front_report, run_with, write_front_csv, Evaluator, Execution, FrontReport, Individual,
    ObjectiveSpec, ParetoResult,
};
use fcell_surrogate::{paper_surface, Mlp, Objective, PaperModel, QuadraticSurface};
use serde::Serialize;

use super::{in_output, model_file, paper_model, percent, physics_power, surface_file, OBJECTIVES};
use crate::manifest::Session;
use crate::reference::{
    render_reference_table, AverageGains, CurrentDensityDelta, ReportedOptimum,
    CURRENT_DENSITY_DELTAS, HEXAGONAL_GAINS, HEXAGONAL_OPTIMUM, PENTAGONAL_GAINS,
    PENTAGONAL_OPTIMUM,
};
use crate::{ObjectiveSource, PipelineError, Result, RunConfig};

struct PhysicsObjective {
    tag: ModelTag,
    voltage: f64,
    objective: Objective,
}

impl Evaluator for PhysicsObjective {
    fn evaluate(&self, pressure: f64, temperature: f64) -> std::result::Result<f64, String> {
        let r = physics_power(self.tag, self.voltage, pressure, temperature)
            .map_err(|e| e.to_string())?;
        Ok(match self.objective {
            Objective::Production => r.production_power,
            Objective::Consumption => r.consumption_power,
        })
    }
}

struct NetworkObjective(Mlp);

impl Evaluator for NetworkObjective {
    fn evaluate(&self, pressure: f64, temperature: f64) -> std::result::Result<f64, String> {
        self.0
            .predict(pressure, temperature)
            .map_err(|e| e.to_string())
    }
}

fn surface_objective(s: QuadraticSurface) -> impl Evaluator {
    move |p: f64, t: f64| s.evaluate(p, t)
}

#[derive(Debug, Clone, Serialize)]
pub struct PointSummary {
    pub pressure_atm: f64,
    pub temperature_c: f64,
    pub p_pro_w: f64,
    pub p_cons_w: f64,
    pub ratio_percent: f64,
}

impl From<&Individual> for PointSummary {
    fn from(m: &Individual) -> Self {
        PointSummary {
            pressure_atm: m.genes[0],
            temperature_c: m.genes[1],
            p_pro_w: m.objectives[0],
            p_cons_w: m.objectives[1],
            ratio_percent: percent(fcell_evolve::power_ratio(m)),
        }
    }
}

/// Recorded values shown beside computed ones; never recomputed.
#[derive(Debug, Clone, Serialize)]
pub struct ReferenceComparison {
    pub reported_optimum: Option<ReportedOptimum>,
    pub reported_gains: Option<AverageGains>,
    pub cfd_current_density_deltas: Vec<CurrentDensityDelta>,
    pub note: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct OptimizeSummary {
    pub source: ObjectiveSource,
    pub preset: ModelTag,
    pub seed: u64,
    pub population_size: usize,
    pub generations: usize,
    pub evaluations: usize,
    pub front_size: usize,
    pub max_production: PointSummary,
    pub min_consumption: PointSummary,
    pub mean_ratio_percent: f64,
    pub ratio_at_max_production_percent: f64,
    pub reference: ReferenceComparison,
}

#[derive(Debug, Clone)]
pub struct OptimizeOutcome {
    pub result: ParetoResult,
    pub report: FrontReport,
    pub summary: OptimizeSummary,
    pub front_path: PathBuf,
    pub summary_path: PathBuf,
}

impl OptimizeOutcome {
    /// Human-readable summary with the recorded reference values.
    pub fn render(&self) -> String {
        let s = &self.summary;
        let point = |name: &str, p: &PointSummary| {
            format!(
                "{name:<16} P = {:.4} atm, T = {:.3} °C, P_pro = {:.6e} W, P_cons = {:.6e} W, ratio = {:.4} %\n",
                p.pressure_atm, p.temperature_c, p.p_pro_w, p.p_cons_w, p.ratio_percent
            )
        };
        let mut out = format!(
            "{} objectives, {} preset, seed {}: {} front members after {} generations\n",
            s.source.name(),
            s.preset,
            s.seed,
            s.front_size,
            s.generations
        );
        out.push_str(&point("max production", &s.max_production));
        out.push_str(&point("min consumption", &s.min_consumption));
        out.push_str(&format!("mean ratio       {:.4} %\n", s.mean_ratio_percent));
        if let Some(r) = s.reference.reported_optimum {
            out.push_str(&format!(
                "reported         P = {} atm, T = {} °C, ratio at max production {} %, mean ratio {} %\n",
                r.pressure, r.temperature, r.ratio_at_max_production, r.mean_ratio
            ));
        }
        out.push('\n');
        out.push_str(&render_reference_table());
        out
    }
}

fn build_spec(config: &RunConfig, session: &mut Session) -> Result<ObjectiveSpec> {
    Ok(match config.source {
        ObjectiveSource::Paper => {
            let model = paper_model(config.preset)?;
            session.component("fcell-surrogate");
            ObjectiveSpec::power(
                surface_objective(paper_surface(model, Objective::Production)),
                surface_objective(paper_surface(model, Objective::Consumption)),
            )
        }
        ObjectiveSource::Physics => {
            session.component("fcell-core");
            let [pro, cons] = OBJECTIVES.map(|objective| PhysicsObjective {
                tag: config.preset,
                voltage: config.operating_voltage,
                objective,
            });
            ObjectiveSpec::power(pro, cons)
        }
        ObjectiveSource::Surrogate => {
            session.component("fcell-surrogate");
            let mut nets = Vec::new();
            for objective in OBJECTIVES {
                let path = in_output(config, &model_file(objective));
                let bytes = session.read_input(&path)?;
                let net = Mlp::load(bytes.as_slice())
                    .map_err(|e| PipelineError::from_surrogate_at(&path, e))?;
                nets.push(NetworkObjective(net));
            }
            let cons = nets.pop().expect("two networks");
            let pro = nets.pop().expect("two networks");
            ObjectiveSpec::power(pro, cons)
        }
        ObjectiveSource::Fitted => {
            session.component("fcell-surrogate");
            let mut surfaces = Vec::new();
            for objective in OBJECTIVES {
                let path = in_output(config, &surface_file(objective));
                let bytes = session.read_input(&path)?;
                let text = String::from_utf8(bytes).map_err(|e| PipelineError::Input {
                    path: path.clone(),
                    message: e.to_string(),
                })?;
                surfaces.push(
                    QuadraticSurface::from_document(&text)
                        .map_err(|e| PipelineError::from_surrogate_at(&path, e))?,
                );
            }
            ObjectiveSpec::power(
                surface_objective(surfaces[0]),
                surface_objective(surfaces[1]),
            )
        }
    })
}

/// Run NSGA-II on the configured objective source and persist the front
/// (`pareto_<source>_<preset>.csv`) and a summary document.
pub fn optimize(config: &RunConfig) -> Result<OptimizeOutcome> {
    let started = Instant::now();
    let tag = format!("{}_{}", config.source.name(), config.preset);
    let mut session = Session::new(
        config,
        format!("optimize:{}:{}", config.source.name(), config.preset),
    );
    let spec = build_spec(config, &mut session)?;
    session.component("fcell-evolve");
    let ga = config.ga_config();
    let result = run_with(&spec, &config.bounds()?, &ga, Execution::default())?;
    let report = front_report(&result)?;

    let (reported_optimum, reported_gains) = match config.preset {
        ModelTag::Pentagonal => (Some(PENTAGONAL_OPTIMUM), Some(PENTAGONAL_GAINS)),
        ModelTag::Hexagonal => (Some(HEXAGONAL_OPTIMUM), Some(HEXAGONAL_GAINS)),
        ModelTag::Cubic => (None, None),
    };
    let summary = OptimizeSummary {
        source: config.source,
        preset: config.preset,
        seed: config.seed,
        population_size: ga.population_size,
        generations: ga.generations,
        evaluations: result.evaluations,
        front_size: report.size,
        max_production: (&report.max_production).into(),
        min_consumption: (&report.min_consumption).into(),
        mean_ratio_percent: percent(report.mean_ratio),
        ratio_at_max_production_percent: percent(report.ratio_at_max_production),
        reference: ReferenceComparison {
            reported_optimum,
            reported_gains,
            cfd_current_density_deltas: CURRENT_DENSITY_DELTAS.to_vec(),
            note: "recorded CFD values, not reproduced by the reduced-order model",
        },
    };

    let mut csv = Vec::new();
    write_front_csv(&result, &mut csv)?;
    let front_path = session.write_output(&format!("pareto_{tag}.csv"), &csv)?;
    let mut doc = serde_json::to_string_pretty(&summary).expect("summary serializes");
    doc.push('\n');
    let summary_path = session.write_output(&format!("summary_{tag}.json"), doc.as_bytes())?;
    session.count("evaluations", result.evaluations as u64);
    session.count("generations", ga.generations as u64);
    session.count("population_size", ga.population_size as u64);
    session.count("front_size", report.size as u64);
    session.note(
        "max_production",
        serde_json::to_value(&summary.max_production).expect("serializes"),
    );
    session.note(
        "min_consumption",
        serde_json::to_value(&summary.min_consumption).expect("serializes"),
    );
    session.note("mean_ratio_percent", summary.mean_ratio_percent);
    session.note(
        "ratio_at_max_production_percent",
        summary.ratio_at_max_production_percent,
    );
    session.commit()?;
    log::info!(
        "optimize {tag}: {} front members in {:.3?}",
        report.size,
        started.elapsed()
    );
    Ok(OptimizeOutcome {
        result,
        report,
        summary,
        front_path,
        summary_path,
    })
}

/// Optimize the published surfaces of `model`.
pub fn paper_opt(config: &RunConfig, model: PaperModel) -> Result<OptimizeOutcome> {
    let preset = match model {
        PaperModel::Pentagonal => ModelTag::Pentagonal,
        PaperModel::Hexagonal => ModelTag::Hexagonal,
    };
    optimize(&RunConfig {
        source: ObjectiveSource::Paper,
        preset,
        ..config.clone()
    })
}
