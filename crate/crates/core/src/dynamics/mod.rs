//! Single-qubit Hamiltonians under a multi-tone drive and their propagators.

mod frame;
mod propagate;

pub use frame::{
    frame_model, frame_models, DriveContext, FrameModel, FrameTag, Lab, Rotating, Rwa,
};
pub use propagate::{
    lab_to_rotating, Integrator, DEFAULT_STEPS_PER_PERIOD, DEFAULT_STEP_CAP, MIN_STEPS_PER_PERIOD,
};

use crate::error::Result;
use crate::operator::Operator2;
use crate::plan::{FrequencyPlan, PulseSpec};

/// `H(t)` for qubit `k_q` in the given frame (ħ = 1).
pub fn hamiltonian_at(
    plan: &FrequencyPlan,
    pulse: &PulseSpec,
    k_q: i64,
    frame: FrameTag,
    t: f64,
) -> Result<Operator2> {
    let ctx = DriveContext::new(plan, pulse, k_q)?;
    Ok(frame_model(frame).pauli_at(&ctx, t).to_operator())
}

/// `U(τ)` with the default step cap.
pub fn propagate(
    plan: &FrequencyPlan,
    pulse: &PulseSpec,
    k_q: i64,
    frame: FrameTag,
    steps_per_fastest_period: u32,
) -> Result<Operator2> {
    Integrator::new(steps_per_fastest_period).propagate(plan, pulse, k_q, frame)
}
