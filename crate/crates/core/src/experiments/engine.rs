use std::sync::Arc;

use rayon::prelude::*;

use super::result::{AxisValue, SweepMetadata, SweepResult, SweepRow};
use crate::dynamics::{FrameTag, Integrator};
use crate::error::{Error, Result};
use crate::fidelity::{average_gate_fidelity, ideal_unitary};
use crate::plan::{FrequencyPlan, PulseSpec};

/// A single grid point: coordinates plus the fully resolved plan and pulse.
#[derive(Debug, Clone)]
pub struct GridPoint {
    pub coords: Vec<AxisValue>,
    pub plan: FrequencyPlan,
    pub pulse: PulseSpec,
}

/// Outcome for one qubit at one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitOutcome {
    pub infidelity: f64,
    pub unitarity_error: f64,
}

/// Evaluates grid points, optionally on a dedicated thread pool.
///
/// Work items are `(point, qubit)` pairs; results are gathered in grid order,
/// so the output does not depend on scheduling.
#[derive(Clone)]
pub struct Engine {
    pub integrator: Integrator,
    pub frame: FrameTag,
    pool: Option<Arc<rayon::ThreadPool>>,
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine")
            .field("integrator", &self.integrator)
            .field("frame", &self.frame)
            .field(
                "threads",
                &self.pool.as_ref().map(|p| p.current_num_threads()),
            )
            .finish()
    }
}

impl Engine {
    pub fn new(integrator: Integrator, frame: FrameTag) -> Self {
        Self {
            integrator,
            frame,
            pool: None,
        }
    }

    pub fn with_threads(mut self, threads: usize) -> Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
        self.pool = Some(Arc::new(pool));
        Ok(self)
    }

    pub fn qubit_outcome(
        &self,
        plan: &FrequencyPlan,
        pulse: &PulseSpec,
        k_q: i64,
    ) -> Result<QubitOutcome> {
        let u = self.integrator.propagate(plan, pulse, k_q, self.frame)?;
        let score = average_gate_fidelity(&ideal_unitary(pulse.phi), &u)?;
        Ok(QubitOutcome {
            infidelity: score.infidelity,
            unitarity_error: u.unitarity_error(),
        })
    }

    /// Runs every point over every qubit of its plan and assembles a [`SweepResult`].
    pub fn sweep(
        &self,
        name: &str,
        axes: &[&str],
        points: Vec<GridPoint>,
        metadata: SweepMetadata,
    ) -> SweepResult {
        let qubits: Vec<i64> = metadata.base_plan.qubit_indices().collect();
        let jobs: Vec<(usize, i64)> = (0..points.len())
            .flat_map(|p| qubits.iter().map(move |&k| (p, k)))
            .collect();
        let run = || -> Vec<Result<QubitOutcome>> {
            jobs.par_iter()
                .map(|&(p, k)| self.qubit_outcome(&points[p].plan, &points[p].pulse, k))
                .collect()
        };
        let outcomes = match &self.pool {
            Some(pool) => pool.install(run),
            None => run(),
        };

        let rows = points
            .into_iter()
            .zip(outcomes.chunks(qubits.len()))
            .map(|(point, chunk)| build_row(point.coords, &qubits, chunk))
            .collect();
        SweepResult {
            name: name.to_string(),
            axes: axes.iter().map(|s| s.to_string()).collect(),
            qubits,
            rows,
            metadata,
        }
    }
}

fn build_row(coords: Vec<AxisValue>, qubits: &[i64], chunk: &[Result<QubitOutcome>]) -> SweepRow {
    let mut errors = Vec::new();
    let mut per_qubit = Vec::with_capacity(chunk.len());
    let mut max_unitarity_error: f64 = 0.0;
    for (k, outcome) in qubits.iter().zip(chunk) {
        match outcome {
            Ok(o) => {
                per_qubit.push(Some(o.infidelity));
                max_unitarity_error = max_unitarity_error.max(o.unitarity_error);
            }
            Err(e) => {
                per_qubit.push(None);
                errors.push(format!("k_q={k}: {e}"));
            }
        }
    }
    let mean_infidelity = if errors.is_empty() && !per_qubit.is_empty() {
        Some(per_qubit.iter().flatten().sum::<f64>() / per_qubit.len() as f64)
    } else {
        None
    };
    SweepRow {
        coords,
        per_qubit,
        mean_infidelity,
        max_unitarity_error,
        error: (!errors.is_empty()).then(|| errors.join("; ")),
    }
}
