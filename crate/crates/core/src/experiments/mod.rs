//! Sweep engine and the registry of runnable experiments.
//!
//! Each experiment implements [`Experiment`] and is looked up by its
//! [`ExperimentKind`] name in an [`ExperimentRegistry`]. The CLI picks one
//! at runtime from the subcommand or the config's `experiment.kind`.

mod engine;
mod result;
mod stats;
mod sweeps;

pub use engine::{Engine, GridPoint, QubitOutcome};
pub use result::{format_real, AxisValue, Cell, SweepMetadata, SweepResult, SweepRow, Table};
pub use stats::{
    argmin_shift, asymmetry_statistic, fit_loglog_slope, fit_power_law, log_asymmetry_statistic,
    ShiftOptimum, SlopeFit,
};
pub use sweeps::{
    asymmetry_profile, single_point, sweep_nd, sweep_shift_grid, sweep_tau_grid, Asymmetry,
    AsymmetryEntry, NdSweep, SecondAxis, ShiftGrid, SinglePoint, SinglePointReport, TauGrid,
};

use crate::config::{ExperimentKind, RunConfig};
use crate::error::{Error, Result};

/// Everything an experiment produces.
#[derive(Debug, Clone, Default)]
pub struct ExperimentOutput {
    pub sweeps: Vec<SweepResult>,
    /// Extra tables (argmin, asymmetry) written next to the sweeps.
    pub tables: Vec<Table>,
    pub summary: serde_json::Value,
}

impl ExperimentOutput {
    /// All tables to serialise, sweeps first.
    pub fn all_tables(&self) -> Vec<Table> {
        self.sweeps
            .iter()
            .map(SweepResult::to_table)
            .chain(self.tables.iter().cloned())
            .collect()
    }
}

pub trait Experiment: Send + Sync {
    fn kind(&self) -> ExperimentKind;

    fn description(&self) -> &'static str;

    fn run(&self, config: &RunConfig, engine: &Engine) -> Result<ExperimentOutput>;
}

pub struct ExperimentRegistry {
    entries: Vec<Box<dyn Experiment>>,
}

impl ExperimentRegistry {
    pub fn empty() -> Self {
        Self {
            entries: Vec::new(),
        }
    }

    /// Registry holding every built-in experiment.
    pub fn builtin() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(NdSweep));
        r.register(Box::new(TauGrid));
        r.register(Box::new(ShiftGrid(SecondAxis::OmegaQ0)));
        r.register(Box::new(ShiftGrid(SecondAxis::NDrive)));
        r.register(Box::new(Asymmetry));
        r.register(Box::new(SinglePoint));
        r
    }

    /// Adds an experiment, replacing any existing one of the same kind.
    pub fn register(&mut self, experiment: Box<dyn Experiment>) {
        self.entries.retain(|e| e.kind() != experiment.kind());
        self.entries.push(experiment);
    }

    pub fn get(&self, kind: ExperimentKind) -> Result<&dyn Experiment> {
        self.entries
            .iter()
            .find(|e| e.kind() == kind)
            .map(|e| e.as_ref())
            .ok_or_else(|| Error::UnknownExperiment(kind.to_string()))
    }

    pub fn by_name(&self, name: &str) -> Result<&dyn Experiment> {
        self.get(name.parse()?)
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Experiment> {
        self.entries.iter().map(|e| e.as_ref())
    }
}

impl Default for ExperimentRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}
