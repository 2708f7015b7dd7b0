//! Run configuration: TOML document → validated [`RunConfig`].
//!
//! Frequencies are given as `ω/2π` in Hz and converted to angular frequency
//! when plans are built. Unknown keys are rejected.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dynamics::{
    FrameTag, Integrator, DEFAULT_STEPS_PER_PERIOD, DEFAULT_STEP_CAP, MIN_STEPS_PER_PERIOD,
};
use crate::error::{Error, Result};
use crate::plan::{FrequencyPlan, PulseSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    NdSweep,
    TauGrid,
    ShiftGridOmega,
    ShiftGridNd,
    Asymmetry,
    SinglePoint,
}

impl ExperimentKind {
    pub const ALL: [Self; 6] = [
        Self::NdSweep,
        Self::TauGrid,
        Self::ShiftGridOmega,
        Self::ShiftGridNd,
        Self::Asymmetry,
        Self::SinglePoint,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::NdSweep => "nd-sweep",
            Self::TauGrid => "tau-grid",
            Self::ShiftGridOmega => "shift-grid-omega",
            Self::ShiftGridNd => "shift-grid-nd",
            Self::Asymmetry => "asymmetry",
            Self::SinglePoint => "single-point",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::UnknownExperiment(s.to_string()))
    }
}

/// Evenly spaced grid `start, start + step, …` up to and including `stop`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as i64;
        (0..=n.max(0))
            .map(|i| self.start + i as f64 * self.step)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSection {
    pub kind: ExperimentKind,
    /// Inclusive `[lo, hi]` range of tone counts.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_d_range: Option<[u32; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_d_values: Option<Vec<u32>>,
    /// Explicit `τ/τ₀` values; takes precedence over `tau_grid`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_ratios: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_grid: Option<GridSpec>,
    /// Inclusive `[lo, hi]` range of comb shifts.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_d_range: Option<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_q0_hz_values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_q: Option<i64>,
    /// `[lo, hi]` window for the log-log slope fit of an N_d sweep.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fit_range: Option<[u32; 2]>,
}

impl ExperimentSection {
    pub fn new(kind: ExperimentKind) -> Self {
        Self {
            kind,
            n_d_range: None,
            n_d_values: None,
            tau_ratios: None,
            tau_grid: None,
            s_d_range: None,
            omega_q0_hz_values: None,
            k_q: None,
            fit_range: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PlanSection {
    pub omega_q0_hz: f64,
    pub delta_hz: f64,
    pub n_q: u32,
    pub n_d: u32,
    pub s_d: i64,
}

impl Default for PlanSection {
    fn default() -> Self {
        Self {
            omega_q0_hz: 5e9,
            delta_hz: 10e6,
            n_q: 7,
            n_d: 7,
            s_d: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PulseSection {
    pub phi: f64,
    pub tau_over_tau0: f64,
    /// Explicit amplitude in rad/s; absent means `α = −φ/τ`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub theta: Vec<f64>,
}

impl Default for PulseSection {
    fn default() -> Self {
        Self {
            phi: FRAC_PI_2,
            tau_over_tau0: 1.0,
            alpha: None,
            theta: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct IntegratorSection {
    pub frame: FrameTag,
    pub steps_per_period: u32,
    pub step_cap: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
}

impl Default for IntegratorSection {
    fn default() -> Self {
        Self {
            frame: FrameTag::Rotating,
            steps_per_period: DEFAULT_STEPS_PER_PERIOD,
            step_cap: DEFAULT_STEP_CAP,
            threads: None,
        }
    }
}

impl IntegratorSection {
    pub fn integrator(&self) -> Integrator {
        Integrator::new(self.steps_per_period).with_step_cap(self.step_cap)
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dir: Option<String>,
    /// File stem; defaults to the experiment kind with `-` replaced by `_`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prefix: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub experiment: ExperimentSection,
    #[serde(default)]
    pub plan: PlanSection,
    #[serde(default)]
    pub pulse: PulseSection,
    #[serde(default)]
    pub integrator: IntegratorSection,
    #[serde(default)]
    pub output: OutputSection,
}

const GHZ: f64 = 1e9;

impl RunConfig {
    /// Reference settings for each experiment kind.
    pub fn preset(kind: ExperimentKind) -> Self {
        let mut cfg = Self {
            experiment: ExperimentSection::new(kind),
            plan: PlanSection::default(),
            pulse: PulseSection::default(),
            integrator: IntegratorSection::default(),
            output: OutputSection::default(),
        };
        let ex = &mut cfg.experiment;
        match kind {
            ExperimentKind::NdSweep => {
                ex.n_d_range = Some([7, 21]);
                ex.fit_range = Some([11, 21]);
            }
            ExperimentKind::TauGrid => {
                ex.n_d_range = Some([7, 21]);
                ex.tau_grid = Some(GridSpec {
                    start: 0.01,
                    stop: 3.1,
                    step: 0.01,
                });
            }
            ExperimentKind::ShiftGridOmega => {
                cfg.plan.n_d = 21;
                ex.s_d_range = Some([-4, 2]);
                ex.omega_q0_hz_values = Some((2..=10).map(|i| i as f64 * 0.5 * GHZ).collect());
            }
            ExperimentKind::ShiftGridNd => {
                cfg.plan.omega_q0_hz = 1.5 * GHZ;
                ex.s_d_range = Some([-4, 2]);
                ex.n_d_values = Some((7..=31).collect());
            }
            ExperimentKind::Asymmetry => {
                cfg.plan.n_d = 21;
                ex.omega_q0_hz_values = Some(vec![1.0 * GHZ, 2.5 * GHZ, 5.0 * GHZ]);
            }
            ExperimentKind::SinglePoint => {
                ex.k_q = Some(0);
            }
        }
        cfg
    }

    pub fn kind(&self) -> ExperimentKind {
        self.experiment.kind
    }

    /// Plan built from the `[plan]` section.
    pub fn base_plan(&self) -> Result<FrequencyPlan> {
        let p = &self.plan;
        FrequencyPlan::from_hz(p.omega_q0_hz, p.delta_hz, p.n_q, p.n_d, p.s_d)
    }

    /// Pulse of width `tau_over_tau0·τ₀(plan)`, honoring the amplitude rule and phases.
    pub fn pulse_for(&self, plan: &FrequencyPlan, tau_over_tau0: f64) -> Result<PulseSpec> {
        let tau = tau_over_tau0 * plan.tau0();
        let pulse = match self.pulse.alpha {
            None => PulseSpec::new(tau, self.pulse.phi)?,
            Some(a) => PulseSpec::with_alpha(tau, self.pulse.phi, a)?,
        };
        Ok(pulse.with_phases(self.pulse.theta.clone()))
    }

    pub fn n_d_axis(&self) -> Vec<u32> {
        let ex = &self.experiment;
        if let Some(v) = &ex.n_d_values {
            return v.clone();
        }
        match ex.n_d_range {
            Some([lo, hi]) => (lo..=hi).collect(),
            None => vec![self.plan.n_d],
        }
    }

    pub fn s_d_axis(&self) -> Vec<i64> {
        match self.experiment.s_d_range {
            Some([lo, hi]) => (lo..=hi).collect(),
            None => vec![self.plan.s_d],
        }
    }

    pub fn tau_axis(&self) -> Vec<f64> {
        let ex = &self.experiment;
        if let Some(v) = &ex.tau_ratios {
            return v.clone();
        }
        match ex.tau_grid {
            Some(g) => g.values(),
            None => vec![self.pulse.tau_over_tau0],
        }
    }

    pub fn omega_axis_hz(&self) -> Vec<f64> {
        self.experiment
            .omega_q0_hz_values
            .clone()
            .unwrap_or_else(|| vec![self.plan.omega_q0_hz])
    }

    pub fn file_stem(&self) -> String {
        self.output
            .prefix
            .clone()
            .unwrap_or_else(|| self.kind().as_str().replace('-', "_"))
    }

    /// Checks every plan the run will build, plus the integrator and pulse settings.
    pub fn validate(&self) -> Result<()> {
        let base = self.base_plan()?;
        let ex = &self.experiment;
        if self.integrator.steps_per_period < MIN_STEPS_PER_PERIOD {
            return Err(Error::TooFewSteps(self.integrator.steps_per_period));
        }
        if self.integrator.threads == Some(0) {
            return Err(Error::Config("integrator.threads must be positive".into()));
        }
        if !self.pulse.phi.is_finite() {
            return Err(Error::Config("pulse.phi must be finite".into()));
        }
        if let Some([lo, hi]) = ex.n_d_range {
            if lo == 0 || lo > hi {
                return Err(Error::Config(format!(
                    "experiment.n_d_range [{lo}, {hi}] is empty or starts at 0"
                )));
            }
        }
        if let Some([lo, hi]) = ex.s_d_range {
            if lo > hi {
                return Err(Error::Config(format!(
                    "experiment.s_d_range [{lo}, {hi}] is empty"
                )));
            }
        }
        if let Some(g) = ex.tau_grid {
            if !(g.step > 0.0 && g.start > 0.0 && g.stop >= g.start) {
                return Err(Error::Config(
                    "experiment.tau_grid needs 0 < start <= stop and step > 0".into(),
                ));
            }
        }
        let taus = self.tau_axis();
        if taus.is_empty() || taus.iter().any(|&t| !(t.is_finite() && t > 0.0)) {
            return Err(Error::Config(
                "pulse widths (tau/tau0) must be positive".into(),
            ));
        }
        for n_d in self.n_d_axis() {
            for s_d in self.s_d_axis() {
                for f in self.omega_axis_hz() {
                    FrequencyPlan::from_hz(f, self.plan.delta_hz, self.plan.n_q, n_d, s_d)?;
                }
            }
        }
        for &t in &taus {
            self.pulse_for(&base, t)?;
        }
        match self.kind() {
            ExperimentKind::Asymmetry if self.s_d_axis() != [0] => {
                return Err(Error::Config("asymmetry profile requires S_d = 0".into()));
            }
            ExperimentKind::SinglePoint => {
                let k_q = ex.k_q.unwrap_or(0);
                base.check_qubit(k_q)?;
            }
            _ => {}
        }
        Ok(())
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }
}

/// Parses and validates a TOML run configuration.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_experiment_section_names_kind() {
        let err = parse_config("[experiment]\n").unwrap_err().to_string();
        assert!(err.contains("kind"), "{err}");
        let err = parse_config("").unwrap_err().to_string();
        assert!(err.contains("experiment"), "{err}");
    }

    #[test]
    fn even_qubit_count_rejected() {
        let err = parse_config("[experiment]\nkind = \"nd-sweep\"\n[plan]\nn_q = 6\n")
            .unwrap_err()
            .to_string();
        assert!(err.contains("odd"), "{err}");
    }

    #[test]
    fn preset_defaults() {
        let cfg = parse_config("[experiment]\nkind = \"nd-sweep\"\n").unwrap();
        assert_eq!(cfg.plan.omega_q0_hz, 5e9);
        assert_eq!(cfg.plan.delta_hz, 10e6);
        assert_eq!(cfg.plan.n_q, 7);
        assert_eq!(cfg.pulse.phi, FRAC_PI_2);
        assert_eq!(cfg.pulse.tau_over_tau0, 1.0);
        assert_eq!(cfg.pulse.alpha, None);
        assert_eq!(cfg.plan.s_d, 0);
        let plan = cfg.base_plan().unwrap();
        let pulse = cfg.pulse_for(&plan, 1.0).unwrap();
        assert!(pulse.has_default_amplitude());
        assert!((pulse.tau - 100e-9).abs() < 1e-20);
    }

    #[test]
    fn unknown_keys_rejected_with_context() {
        let err = parse_config("[experiment]\nkind = \"nd-sweep\"\n[plan]\nomega = 3\n")
            .unwrap_err()
            .to_string();
        assert!(err.contains("omega") && err.contains("line"), "{err}");
        assert!(parse_config("[experiment]\nkind = \"sideways\"\n").is_err());
    }

    #[test]
    fn validation_covers_every_grid_plan() {
        let text = "[experiment]\nkind = \"shift-grid-omega\"\ns_d_range = [-40, 0]\n[plan]\nomega_q0_hz = 1e8\nn_d = 21\n";
        assert!(matches!(parse_config(text), Err(Error::InvalidPlan(_))));
        let text = "[experiment]\nkind = \"nd-sweep\"\n[integrator]\nsteps_per_period = 4\n";
        assert!(matches!(parse_config(text), Err(Error::TooFewSteps(4))));
        let text = "[experiment]\nkind = \"single-point\"\nk_q = 9\n";
        assert!(matches!(
            parse_config(text),
            Err(Error::IndexOutOfSet { .. })
        ));
    }

    #[test]
    fn presets_validate_and_round_trip() {
        for kind in ExperimentKind::ALL {
            let cfg = RunConfig::preset(kind);
            cfg.validate().unwrap();
            let back = parse_config(&cfg.to_toml().unwrap()).unwrap();
            assert_eq!(back, cfg);
            assert_eq!(kind.as_str().parse::<ExperimentKind>().unwrap(), kind);
        }
    }

    #[test]
    fn grid_spec_is_inclusive() {
        let g = GridSpec {
            start: 0.01,
            stop: 3.1,
            step: 0.01,
        };
        let v = g.values();
        assert_eq!(v.len(), 310);
        assert!((v[309] - 3.1).abs() < 1e-12);
    }
}
