use serde::Serialize;
use serde_json::json;

use super::engine::{Engine, GridPoint};
use super::result::{AxisValue, Cell, SweepMetadata, SweepResult, Table};
use super::stats::{argmin_shift, asymmetry_statistic, fit_loglog_slope, log_asymmetry_statistic};
use super::{Experiment, ExperimentOutput};
use crate::config::{ExperimentKind, RunConfig};
use crate::error::Result;
use crate::fidelity::{
    analytic_infidelity, approx_infidelity, average_gate_fidelity, ideal_unitary,
};
use crate::magnus::{lambda_general, lambda_orthogonal, MagnusCoefficients};
use crate::plan::{FrequencyPlan, PulseClass};

const TAU_2PI: f64 = std::f64::consts::TAU;

fn metadata(config: &RunConfig, engine: &Engine, base: FrequencyPlan) -> SweepMetadata {
    SweepMetadata {
        experiment: config.kind().to_string(),
        base_plan: base,
        phi: config.pulse.phi,
        frame: engine.frame,
        integrator: engine.integrator,
        version: env!("CARGO_PKG_VERSION").to_string(),
    }
}

/// Per-qubit and mean infidelity against the number of drive tones.
pub fn sweep_nd(config: &RunConfig, engine: &Engine) -> Result<SweepResult> {
    let base = config.base_plan()?;
    let mut points = Vec::new();
    for n_d in config.n_d_axis() {
        let plan = base.with_n_d(n_d)?;
        points.push(GridPoint {
            coords: vec![AxisValue::Int(n_d as i64)],
            pulse: config.pulse_for(&plan, config.pulse.tau_over_tau0)?,
            plan,
        });
    }
    Ok(engine.sweep("nd_sweep", &["n_d"], points, metadata(config, engine, base)))
}

/// Mean infidelity over the `(N_d, τ/τ₀)` grid.
pub fn sweep_tau_grid(config: &RunConfig, engine: &Engine) -> Result<SweepResult> {
    let base = config.base_plan()?;
    let taus = config.tau_axis();
    let mut points = Vec::new();
    for n_d in config.n_d_axis() {
        let plan = base.with_n_d(n_d)?;
        for &ratio in &taus {
            points.push(GridPoint {
                coords: vec![AxisValue::Int(n_d as i64), AxisValue::Real(ratio)],
                pulse: config.pulse_for(&plan, ratio)?,
                plan,
            });
        }
    }
    Ok(engine.sweep(
        "tau_grid",
        &["n_d", "tau_over_tau0"],
        points,
        metadata(config, engine, base),
    ))
}

/// Second axis of a shift grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SecondAxis {
    OmegaQ0,
    NDrive,
}

impl SecondAxis {
    pub fn column_name(&self) -> &'static str {
        match self {
            Self::OmegaQ0 => "omega_q0_hz",
            Self::NDrive => "n_d",
        }
    }
}

/// Mean infidelity over `(second axis, S_d)`.
pub fn sweep_shift_grid(
    config: &RunConfig,
    engine: &Engine,
    axis: SecondAxis,
) -> Result<SweepResult> {
    let base = config.base_plan()?;
    let columns: Vec<(AxisValue, FrequencyPlan)> = match axis {
        SecondAxis::OmegaQ0 => config
            .omega_axis_hz()
            .into_iter()
            .map(|f| Ok((AxisValue::Real(f), base.with_omega_q0(TAU_2PI * f)?)))
            .collect::<Result<_>>()?,
        SecondAxis::NDrive => config
            .n_d_axis()
            .into_iter()
            .map(|n| Ok((AxisValue::Int(n as i64), base.with_n_d(n)?)))
            .collect::<Result<_>>()?,
    };
    let mut points = Vec::new();
    for (col, plan) in columns {
        for s_d in config.s_d_axis() {
            let plan = plan.with_shift(s_d)?;
            points.push(GridPoint {
                coords: vec![col, AxisValue::Int(s_d)],
                pulse: config.pulse_for(&plan, config.pulse.tau_over_tau0)?,
                plan,
            });
        }
    }
    let name = match axis {
        SecondAxis::OmegaQ0 => "shift_grid_omega",
        SecondAxis::NDrive => "shift_grid_nd",
    };
    Ok(engine.sweep(
        name,
        &[axis.column_name(), "s_d"],
        points,
        metadata(config, engine, base),
    ))
}

/// Asymmetry of one per-qubit profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymmetryEntry {
    pub omega_q0_hz: f64,
    pub n_d: u32,
    pub asymmetry: Option<f64>,
    pub log_asymmetry: Option<f64>,
}

/// Per-qubit infidelity at `S_d = 0` for every `(ω_q0, N_d)` pair, plus the
/// asymmetry `Σ_{k>0}[inf(−k) − inf(k)]` of each profile and its log-ratio form.
pub fn asymmetry_profile(
    config: &RunConfig,
    engine: &Engine,
) -> Result<(SweepResult, Vec<AsymmetryEntry>)> {
    let base = config.base_plan()?.with_shift(0)?;
    let mut points = Vec::new();
    for f in config.omega_axis_hz() {
        for n_d in config.n_d_axis() {
            let plan = base.with_omega_q0(TAU_2PI * f)?.with_n_d(n_d)?;
            points.push(GridPoint {
                coords: vec![AxisValue::Real(f), AxisValue::Int(n_d as i64)],
                pulse: config.pulse_for(&plan, config.pulse.tau_over_tau0)?,
                plan,
            });
        }
    }
    let result = engine.sweep(
        "asymmetry",
        &["omega_q0_hz", "n_d"],
        points,
        metadata(config, engine, base),
    );
    let entries = result
        .rows
        .iter()
        .map(|r| AsymmetryEntry {
            omega_q0_hz: r.coords[0].as_f64(),
            n_d: r.coords[1].as_f64() as u32,
            asymmetry: asymmetry_statistic(&result.qubits, &r.per_qubit),
            log_asymmetry: log_asymmetry_statistic(&result.qubits, &r.per_qubit),
        })
        .collect();
    Ok((result, entries))
}

/// Numerical and analytic figures of merit for one qubit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SinglePointReport {
    pub k_q: i64,
    pub n_d: u32,
    pub s_d: i64,
    pub tau_over_tau0: f64,
    pub classification: PulseClass,
    pub gamma: Vec<i64>,
    pub frame: String,
    pub fidelity: f64,
    pub infidelity: f64,
    pub unitarity_error: f64,
    pub lambda_general: Option<MagnusCoefficients>,
    pub lambda_orthogonal: Option<MagnusCoefficients>,
    pub analytic_infidelity: Option<f64>,
    pub approx_infidelity: Option<f64>,
}

pub fn single_point(config: &RunConfig, engine: &Engine) -> Result<SinglePointReport> {
    let plan = config.base_plan()?;
    let k_q = config.experiment.k_q.unwrap_or(0);
    let ratio = config.pulse.tau_over_tau0;
    let pulse = config.pulse_for(&plan, ratio)?;
    let u = engine
        .integrator
        .propagate(&plan, &pulse, k_q, engine.frame)?;
    let score = average_gate_fidelity(&ideal_unitary(pulse.phi), &u)?;
    let classification = plan.classify_pulse_width(pulse.tau);
    let general = lambda_general(&plan, &pulse, k_q).ok();
    let orthogonal = classification
        .order()
        .and_then(|m| lambda_orthogonal(&plan, &pulse, k_q, m).ok());
    let approx = classification
        .order()
        .and_then(|m| approx_infidelity(&plan, k_q, m, pulse.phi).ok());
    Ok(SinglePointReport {
        k_q,
        n_d: plan.n_d(),
        s_d: plan.s_d(),
        tau_over_tau0: ratio,
        classification,
        gamma: plan.gamma_set(k_q)?,
        frame: engine.frame.to_string(),
        fidelity: score.fidelity,
        infidelity: score.infidelity,
        unitarity_error: u.unitarity_error(),
        lambda_general: general,
        lambda_orthogonal: orthogonal,
        analytic_infidelity: general.map(|c| analytic_infidelity(&c, pulse.phi)),
        approx_infidelity: approx,
    })
}

pub struct NdSweep;
pub struct TauGrid;
pub struct ShiftGrid(pub SecondAxis);
pub struct Asymmetry;
pub struct SinglePoint;

impl Experiment for NdSweep {
    fn kind(&self) -> ExperimentKind {
        ExperimentKind::NdSweep
    }

    fn description(&self) -> &'static str {
        "infidelity vs number of drive tones at fixed pulse width, with log-log slope"
    }

    fn run(&self, config: &RunConfig, engine: &Engine) -> Result<ExperimentOutput> {
        let sweep = sweep_nd(config, engine)?;
        let [lo, hi] = config.experiment.fit_range.unwrap_or([11, 21]);
        let fit = match fit_loglog_slope(&sweep, "n_d", lo as f64, hi as f64) {
            Ok(f) => json!(f),
            Err(e) => json!({ "error": e.to_string() }),
        };
        Ok(ExperimentOutput {
            sweeps: vec![sweep],
            tables: Vec::new(),
            summary: json!({ "slope_fit": fit }),
        })
    }
}

impl Experiment for TauGrid {
    fn kind(&self) -> ExperimentKind {
        ExperimentKind::TauGrid
    }

    fn description(&self) -> &'static str {
        "mean infidelity over number of drive tones and normalised pulse width"
    }

    fn run(&self, config: &RunConfig, engine: &Engine) -> Result<ExperimentOutput> {
        Ok(ExperimentOutput {
            sweeps: vec![sweep_tau_grid(config, engine)?],
            ..Default::default()
        })
    }
}

impl Experiment for ShiftGrid {
    fn kind(&self) -> ExperimentKind {
        match self.0 {
            SecondAxis::OmegaQ0 => ExperimentKind::ShiftGridOmega,
            SecondAxis::NDrive => ExperimentKind::ShiftGridNd,
        }
    }

    fn description(&self) -> &'static str {
        match self.0 {
            SecondAxis::OmegaQ0 => "mean infidelity over comb shift and base qubit frequency",
            SecondAxis::NDrive => "mean infidelity over comb shift and number of drive tones",
        }
    }

    fn run(&self, config: &RunConfig, engine: &Engine) -> Result<ExperimentOutput> {
        let sweep = sweep_shift_grid(config, engine, self.0)?;
        let col = self.0.column_name();
        let optima = argmin_shift(&sweep, col, "s_d")?;
        let table = Table {
            name: format!("{}_argmin", sweep.name),
            header: vec![col.to_string(), "s_d_opt".into(), "mean_infidelity".into()],
            rows: optima
                .iter()
                .map(|o| {
                    vec![
                        Cell::Axis(o.column),
                        Cell::Int(o.s_d),
                        Cell::Real(o.mean_infidelity),
                    ]
                })
                .collect(),
        };
        Ok(ExperimentOutput {
            sweeps: vec![sweep],
            tables: vec![table],
            summary: json!({ "argmin": optima }),
        })
    }
}

impl Experiment for Asymmetry {
    fn kind(&self) -> ExperimentKind {
        ExperimentKind::Asymmetry
    }

    fn description(&self) -> &'static str {
        "per-qubit infidelity profile at S_d = 0 and its left/right asymmetry"
    }

    fn run(&self, config: &RunConfig, engine: &Engine) -> Result<ExperimentOutput> {
        let (sweep, entries) = asymmetry_profile(config, engine)?;
        let table = Table {
            name: "asymmetry_stat".into(),
            header: vec![
                "omega_q0_hz".into(),
                "n_d".into(),
                "asymmetry".into(),
                "log_asymmetry".into(),
            ],
            rows: entries
                .iter()
                .map(|e| {
                    vec![
                        Cell::Real(e.omega_q0_hz),
                        Cell::Int(e.n_d as i64),
                        Cell::from(e.asymmetry),
                        Cell::from(e.log_asymmetry),
                    ]
                })
                .collect(),
        };
        Ok(ExperimentOutput {
            sweeps: vec![sweep],
            tables: vec![table],
            summary: json!({ "asymmetry": entries }),
        })
    }
}

impl Experiment for SinglePoint {
    fn kind(&self) -> ExperimentKind {
        ExperimentKind::SinglePoint
    }

    fn description(&self) -> &'static str {
        "one qubit at one plan: numerical fidelity, Magnus coefficients and analytic estimates"
    }

    fn run(&self, config: &RunConfig, engine: &Engine) -> Result<ExperimentOutput> {
        let r = single_point(config, engine)?;
        let opt = |v: Option<f64>| Cell::from(v);
        let lg = r.lambda_general;
        let table = Table {
            name: "single_point".into(),
            header: [
                "k_q",
                "n_d",
                "s_d",
                "tau_over_tau0",
                "fidelity",
                "infidelity",
                "unitarity_error",
                "lambda_x",
                "lambda_y",
                "lambda_z",
                "analytic_infidelity",
                "approx_infidelity",
            ]
            .map(String::from)
            .to_vec(),
            rows: vec![vec![
                Cell::Int(r.k_q),
                Cell::Int(r.n_d as i64),
                Cell::Int(r.s_d),
                Cell::Real(r.tau_over_tau0),
                Cell::Real(r.fidelity),
                Cell::Real(r.infidelity),
                Cell::Real(r.unitarity_error),
                opt(lg.map(|c| c.lambda_x)),
                opt(lg.map(|c| c.lambda_y)),
                opt(lg.map(|c| c.lambda_z)),
                opt(r.analytic_infidelity),
                opt(r.approx_infidelity),
            ]],
        };
        Ok(ExperimentOutput {
            sweeps: Vec::new(),
            tables: vec![table],
            summary: json!(r),
        })
    }
}
