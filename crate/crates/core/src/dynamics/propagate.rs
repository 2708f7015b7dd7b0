use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::frame::{frame_model, DriveContext, FrameModel, FrameTag};
use crate::error::{Error, Result};
use crate::operator::{Operator2, PauliVector};
use crate::plan::{FrequencyPlan, PulseSpec};

pub const DEFAULT_STEPS_PER_PERIOD: u32 = 64;
pub const MIN_STEPS_PER_PERIOD: u32 = 16;
pub const DEFAULT_STEP_CAP: u64 = 100_000_000;

/// Piecewise-constant midpoint propagator.
///
/// Each step multiplies `U` on the left by the exact exponential
/// `exp(−i·H(t_mid)·h)`, so the result is unitary to rounding regardless of
/// the step size. The number of steps is always even, which makes a split at
/// `τ/2` land on a step boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Integrator {
    pub steps_per_period: u32,
    pub step_cap: u64,
}

impl Default for Integrator {
    fn default() -> Self {
        Self::new(DEFAULT_STEPS_PER_PERIOD)
    }
}

impl Integrator {
    pub fn new(steps_per_period: u32) -> Self {
        Self {
            steps_per_period,
            step_cap: DEFAULT_STEP_CAP,
        }
    }

    pub fn with_step_cap(mut self, cap: u64) -> Self {
        self.step_cap = cap;
        self
    }

    /// Steps needed to cover the whole pulse in `frame`.
    pub fn step_count(&self, model: &dyn FrameModel, ctx: &DriveContext) -> Result<u64> {
        if self.steps_per_period < MIN_STEPS_PER_PERIOD {
            return Err(Error::TooFewSteps(self.steps_per_period));
        }
        let periods = ctx.tau * model.fastest_frequency(ctx) / TAU;
        let raw = (periods * self.steps_per_period as f64).ceil();
        if !raw.is_finite() || raw > self.step_cap as f64 {
            return Err(Error::StepBudget {
                needed: raw.min(u64::MAX as f64) as u64,
                cap: self.step_cap,
            });
        }
        let n = (raw as u64).max(2);
        let n = n + n % 2;
        if n > self.step_cap {
            return Err(Error::StepBudget {
                needed: n,
                cap: self.step_cap,
            });
        }
        Ok(n)
    }

    /// `U(τ)` for qubit `k_q`.
    pub fn propagate(
        &self,
        plan: &FrequencyPlan,
        pulse: &PulseSpec,
        k_q: i64,
        frame: FrameTag,
    ) -> Result<Operator2> {
        let ctx = DriveContext::new(plan, pulse, k_q)?;
        let model = frame_model(frame);
        let n = self.step_count(model, &ctx)?;
        Ok(propagate_steps(model, &ctx, 0, n, ctx.tau / n as f64))
    }

    /// `U(τ/2 → τ)·U(0 → τ/2)` on the same step grid as [`Integrator::propagate`].
    pub fn propagate_halves(
        &self,
        plan: &FrequencyPlan,
        pulse: &PulseSpec,
        k_q: i64,
        frame: FrameTag,
    ) -> Result<(Operator2, Operator2)> {
        let ctx = DriveContext::new(plan, pulse, k_q)?;
        let model = frame_model(frame);
        let n = self.step_count(model, &ctx)?;
        let h = ctx.tau / n as f64;
        let first = propagate_steps(model, &ctx, 0, n / 2, h);
        let second = propagate_steps(model, &ctx, n / 2, n, h);
        Ok((first, second))
    }
}

/// Applies steps `start..end` of width `h` to the identity.
fn propagate_steps(
    model: &dyn FrameModel,
    ctx: &DriveContext,
    start: u64,
    end: u64,
    h: f64,
) -> Operator2 {
    let mut u = Operator2::identity();
    for i in start..end {
        let t_mid = (i as f64 + 0.5) * h;
        let hv: PauliVector = model.pauli_at(ctx, t_mid);
        u = hv.exp_neg_i(h) * u;
    }
    u
}

/// Maps a lab-frame propagator at time `t` into the frame rotating at `omega_q`:
/// `exp(−i(ω_q t/2)σz)·U_lab`.
pub fn lab_to_rotating(u_lab: &Operator2, omega_q: f64, t: f64) -> Operator2 {
    PauliVector::new(0.0, 0.0, 0.0, omega_q / 2.0).exp_neg_i(t) * *u_lab
}
