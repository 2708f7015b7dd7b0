use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::PauliVector;
use crate::plan::{FrequencyPlan, PulseSpec};

/// Reference frame a propagation runs in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FrameTag {
    Lab,
    #[default]
    Rotating,
    Rwa,
}

impl FrameTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Lab => "lab",
            Self::Rotating => "rotating",
            Self::Rwa => "rwa",
        }
    }
}

impl fmt::Display for FrameTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FrameTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        frame_models()
            .iter()
            .map(|m| m.tag())
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::UnknownFrame(s.to_string()))
    }
}

/// Everything about one qubit under one drive that the frame models need,
/// resolved once so the per-step cost is a single pass over the tones.
#[derive(Debug, Clone)]
pub struct DriveContext {
    pub k_q: i64,
    pub omega_q: f64,
    pub delta: f64,
    pub alpha: f64,
    pub tau: f64,
    /// `l_d − k_q`: detuning index of the lowest tone.
    first_offset: i64,
    n_tones: usize,
    /// `e^{iθ_k}` per tone, `None` when every phase is zero.
    phases: Option<Vec<Complex64>>,
    pulse: PulseSpec,
}

impl DriveContext {
    pub fn new(plan: &FrequencyPlan, pulse: &PulseSpec, k_q: i64) -> Result<Self> {
        let omega_q = plan.qubit_frequency(k_q)?;
        let phases: Vec<Complex64> = plan
            .drive_indices()
            .map(|k_d| Complex64::from_polar(1.0, pulse.phase(plan, k_d)))
            .collect();
        let phases = phases.iter().any(|z| z.im != 0.0).then_some(phases);
        Ok(Self {
            k_q,
            omega_q,
            delta: plan.delta(),
            alpha: pulse.alpha,
            tau: pulse.tau,
            first_offset: plan.l_d() - k_q,
            n_tones: plan.n_d() as usize,
            phases,
            pulse: pulse.clone(),
        })
    }

    pub fn envelope(&self, t: f64) -> f64 {
        self.pulse.envelope_at(t)
    }

    /// `max_k |Δ_{k k_q}|`.
    pub fn max_abs_detuning(&self) -> f64 {
        let lo = self.first_offset;
        let hi = lo + self.n_tones as i64 - 1;
        lo.abs().max(hi.abs()) as f64 * self.delta
    }

    /// Highest drive frequency `ω_d,max`.
    pub fn max_drive_frequency(&self) -> f64 {
        self.omega_q + (self.first_offset + self.n_tones as i64 - 1) as f64 * self.delta
    }

    /// `S(t) = Σ_k exp(i(Δ_{k k_q}·t + θ_k))`.
    pub fn tone_sum(&self, t: f64) -> Complex64 {
        let step = Complex64::from_polar(1.0, self.delta * t);
        let mut term = Complex64::from_polar(1.0, self.first_offset as f64 * self.delta * t);
        let mut sum = Complex64::new(0.0, 0.0);
        match &self.phases {
            None => {
                for _ in 0..self.n_tones {
                    sum += term;
                    term *= step;
                }
            }
            Some(ph) => {
                for p in ph {
                    sum += term * p;
                    term *= step;
                }
            }
        }
        sum
    }
}

/// One way of writing the driven single-qubit Hamiltonian.
pub trait FrameModel: Send + Sync {
    fn tag(&self) -> FrameTag;

    /// Pauli coefficients of `H(t)`.
    fn pauli_at(&self, ctx: &DriveContext, t: f64) -> PauliVector;

    /// Highest angular frequency present in `H(t)`; sets the step size.
    fn fastest_frequency(&self, ctx: &DriveContext) -> f64;
}

/// `H = −(ω_q/2)σz + α·s(t)·Σ_k sin(ω_d,k t + θ_k)·σy`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Lab;

/// Exact interaction picture with respect to `−(ω_q/2)σz`, counter-rotating
/// terms at `2ω_q + Δ` included.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rotating;

/// Rotating frame with the `2ω_q + Δ` terms dropped.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rwa;

impl FrameModel for Lab {
    fn tag(&self) -> FrameTag {
        FrameTag::Lab
    }

    fn pauli_at(&self, ctx: &DriveContext, t: f64) -> PauliVector {
        let z = -0.5 * ctx.omega_q;
        let s = ctx.envelope(t);
        if s == 0.0 {
            return PauliVector::new(0.0, 0.0, 0.0, z);
        }
        let carrier = Complex64::from_polar(1.0, ctx.omega_q * t);
        let y = ctx.alpha * s * (carrier * ctx.tone_sum(t)).im;
        PauliVector::new(0.0, 0.0, y, z)
    }

    fn fastest_frequency(&self, ctx: &DriveContext) -> f64 {
        ctx.max_drive_frequency().max(ctx.omega_q)
    }
}

impl FrameModel for Rotating {
    fn tag(&self) -> FrameTag {
        FrameTag::Rotating
    }

    fn pauli_at(&self, ctx: &DriveContext, t: f64) -> PauliVector {
        let s = ctx.envelope(t);
        if s == 0.0 {
            return PauliVector::default();
        }
        let sum = ctx.tone_sum(t);
        let fast = Complex64::from_polar(1.0, 2.0 * ctx.omega_q * t) * sum;
        let a = 0.5 * ctx.alpha * s;
        PauliVector::new(0.0, a * (fast.re - sum.re), a * (fast.im + sum.im), 0.0)
    }

    fn fastest_frequency(&self, ctx: &DriveContext) -> f64 {
        2.0 * ctx.omega_q + ctx.max_abs_detuning()
    }
}

impl FrameModel for Rwa {
    fn tag(&self) -> FrameTag {
        FrameTag::Rwa
    }

    fn pauli_at(&self, ctx: &DriveContext, t: f64) -> PauliVector {
        let s = ctx.envelope(t);
        if s == 0.0 {
            return PauliVector::default();
        }
        let sum = ctx.tone_sum(t);
        let a = 0.5 * ctx.alpha * s;
        PauliVector::new(0.0, -a * sum.re, a * sum.im, 0.0)
    }

    fn fastest_frequency(&self, ctx: &DriveContext) -> f64 {
        // A lone resonant tone gives a constant Hamiltonian; resolve the pulse itself.
        ctx.max_abs_detuning().max(TAU / ctx.tau)
    }
}

static FRAMES: [&dyn FrameModel; 3] = [&Lab, &Rotating, &Rwa];

/// All registered frame models.
pub fn frame_models() -> &'static [&'static dyn FrameModel] {
    &FRAMES
}

pub fn frame_model(tag: FrameTag) -> &'static dyn FrameModel {
    match tag {
        FrameTag::Lab => &Lab,
        FrameTag::Rotating => &Rotating,
        FrameTag::Rwa => &Rwa,
    }
}
