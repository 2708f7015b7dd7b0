//! Comb geometry for frequency-division-multiplexed drives.
//!
//! Qubits sit at `ω_q,k = ω_q0 + k·Δ` for `k ∈ K_q = [−(N_q−1)/2, (N_q−1)/2]`;
//! drive tones sit on the same grid, `ω_d,k = ω_q0 + k·Δ` for
//! `k ∈ K_d = [−⌊N_d/2⌋ + S_d, ⌊(N_d−1)/2⌋ + S_d]`. All frequencies are
//! angular (rad/s).

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default tolerance for pulse-width classification, relative to τ₀.
pub const DEFAULT_WIDTH_TOL: f64 = 1e-9;

/// Above this `Δ/ω_q0` ratio the plan is flagged as leaving the `Δ ≪ ω_q0` regime.
pub const SPACING_RATIO_WARN: f64 = 0.05;

/// Frequency comb shared by the qubits and the drive tones.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyPlan {
    omega_q0: f64,
    delta: f64,
    n_q: u32,
    n_d: u32,
    s_d: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum PlanWarning {
    /// `Δ/ω_q0` is not small.
    WideSpacing { ratio: f64 },
    /// Some qubits have no resonant tone in `K_d`.
    UncoveredQubits { k_q: Vec<i64> },
}

impl fmt::Display for PlanWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::WideSpacing { ratio } => {
                write!(f, "spacing/base-frequency ratio {ratio:.3e} is not small")
            }
            Self::UncoveredQubits { k_q } => {
                write!(f, "qubits {k_q:?} have no resonant drive tone")
            }
        }
    }
}

impl FrequencyPlan {
    /// Builds a plan from angular frequencies. Rejects even or zero `n_q`,
    /// zero `n_d`, non-positive spacing and any non-positive qubit or drive
    /// frequency.
    pub fn new(omega_q0: f64, delta: f64, n_q: u32, n_d: u32, s_d: i64) -> Result<Self> {
        if !(omega_q0.is_finite() && omega_q0 > 0.0) {
            return Err(Error::InvalidPlan(format!(
                "base qubit frequency must be positive, got {omega_q0}"
            )));
        }
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::InvalidPlan(format!(
                "frequency spacing must be positive, got {delta}"
            )));
        }
        if n_q == 0 || n_q.is_multiple_of(2) {
            return Err(Error::InvalidPlan(format!(
                "number of qubits must be odd, got {n_q}"
            )));
        }
        if n_d == 0 {
            return Err(Error::InvalidPlan(
                "number of drive tones must be positive".into(),
            ));
        }
        let plan = Self {
            omega_q0,
            delta,
            n_q,
            n_d,
            s_d,
        };
        let lowest_qubit = plan.qubit_frequency_unchecked(plan.l_q());
        let lowest_drive = plan.qubit_frequency_unchecked(plan.l_d());
        if lowest_qubit <= 0.0 || lowest_drive <= 0.0 {
            return Err(Error::InvalidPlan(format!(
                "lowest qubit/drive frequencies must be positive, got {lowest_qubit:.6e}/{lowest_drive:.6e} rad/s"
            )));
        }
        Ok(plan)
    }

    /// Same as [`FrequencyPlan::new`] with frequencies given as `ω/2π` in Hz.
    pub fn from_hz(f_q0: f64, spacing_hz: f64, n_q: u32, n_d: u32, s_d: i64) -> Result<Self> {
        Self::new(TAU * f_q0, TAU * spacing_hz, n_q, n_d, s_d)
    }

    pub fn omega_q0(&self) -> f64 {
        self.omega_q0
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn n_q(&self) -> u32 {
        self.n_q
    }

    pub fn n_d(&self) -> u32 {
        self.n_d
    }

    pub fn s_d(&self) -> i64 {
        self.s_d
    }

    pub fn r_q(&self) -> i64 {
        (self.n_q as i64 - 1) / 2
    }

    pub fn l_q(&self) -> i64 {
        -self.r_q()
    }

    pub fn l_d(&self) -> i64 {
        -(self.n_d as i64 / 2) + self.s_d
    }

    pub fn r_d(&self) -> i64 {
        (self.n_d as i64 - 1) / 2 + self.s_d
    }

    pub fn qubit_indices(&self) -> impl Iterator<Item = i64> + Clone {
        self.l_q()..=self.r_q()
    }

    pub fn drive_indices(&self) -> impl Iterator<Item = i64> + Clone {
        self.l_d()..=self.r_d()
    }

    pub fn contains_qubit(&self, k_q: i64) -> bool {
        (self.l_q()..=self.r_q()).contains(&k_q)
    }

    pub fn contains_drive(&self, k_d: i64) -> bool {
        (self.l_d()..=self.r_d()).contains(&k_d)
    }

    pub fn check_qubit(&self, k_q: i64) -> Result<()> {
        if self.contains_qubit(k_q) {
            Ok(())
        } else {
            Err(Error::IndexOutOfSet {
                kind: "qubit",
                index: k_q,
                lo: self.l_q(),
                hi: self.r_q(),
            })
        }
    }

    pub fn check_drive(&self, k_d: i64) -> Result<()> {
        if self.contains_drive(k_d) {
            Ok(())
        } else {
            Err(Error::IndexOutOfSet {
                kind: "drive",
                index: k_d,
                lo: self.l_d(),
                hi: self.r_d(),
            })
        }
    }

    fn qubit_frequency_unchecked(&self, k: i64) -> f64 {
        self.omega_q0 + k as f64 * self.delta
    }

    pub fn qubit_frequency(&self, k_q: i64) -> Result<f64> {
        self.check_qubit(k_q)?;
        Ok(self.qubit_frequency_unchecked(k_q))
    }

    pub fn drive_frequency(&self, k_d: i64) -> Result<f64> {
        self.check_drive(k_d)?;
        Ok(self.qubit_frequency_unchecked(k_d))
    }

    /// Fundamental orthogonality period `τ₀ = 2π/Δ`.
    pub fn tau0(&self) -> f64 {
        TAU / self.delta
    }

    /// `Δ_{k_d k_q} = (k_d − k_q)·Δ`.
    pub fn detuning(&self, k_d: i64, k_q: i64) -> Result<f64> {
        self.check_drive(k_d)?;
        self.check_qubit(k_q)?;
        Ok((k_d - k_q) as f64 * self.delta)
    }

    /// Drive indices whose mirror image about `k_q` is absent from `K_d`, ascending.
    pub fn gamma_set(&self, k_q: i64) -> Result<Vec<i64>> {
        self.check_qubit(k_q)?;
        Ok(self
            .drive_indices()
            .filter(|&k_d| !self.contains_drive(2 * k_q - k_d))
            .collect())
    }

    pub fn with_n_d(&self, n_d: u32) -> Result<Self> {
        Self::new(self.omega_q0, self.delta, self.n_q, n_d, self.s_d)
    }

    pub fn with_shift(&self, s_d: i64) -> Result<Self> {
        Self::new(self.omega_q0, self.delta, self.n_q, self.n_d, s_d)
    }

    pub fn with_omega_q0(&self, omega_q0: f64) -> Result<Self> {
        Self::new(omega_q0, self.delta, self.n_q, self.n_d, self.s_d)
    }

    pub fn warnings(&self) -> Vec<PlanWarning> {
        let mut out = Vec::new();
        let ratio = self.delta / self.omega_q0;
        if ratio > SPACING_RATIO_WARN {
            out.push(PlanWarning::WideSpacing { ratio });
        }
        let uncovered: Vec<i64> = self
            .qubit_indices()
            .filter(|&k| !self.contains_drive(k))
            .collect();
        if !uncovered.is_empty() {
            out.push(PlanWarning::UncoveredQubits { k_q: uncovered });
        }
        out
    }

    /// Classifies `tau` as `m·τ₀/2`: even `m` is orthogonal, odd `m` quasi-orthogonal.
    pub fn classify_pulse_width(&self, tau: f64) -> PulseClass {
        self.classify_pulse_width_with_tol(tau, DEFAULT_WIDTH_TOL)
    }

    pub fn classify_pulse_width_with_tol(&self, tau: f64, rel_tol: f64) -> PulseClass {
        let tau0 = self.tau0();
        let m = (2.0 * tau / tau0).round();
        if m < 1.0 || (tau - m * tau0 / 2.0).abs() > rel_tol * tau0 {
            return PulseClass::NonOrthogonal;
        }
        let m = m as u32;
        if m.is_multiple_of(2) {
            PulseClass::Orthogonal(m)
        } else {
            PulseClass::QuasiOrthogonal(m)
        }
    }

    /// Closed-form Fourier transform of `s(t)·sin(ω_d t + θ)` over `[0, τ]`,
    /// evaluated on `freq_grid` and scaled so the value at `ω_d` has unit
    /// magnitude.
    pub fn pulse_spectrum(
        &self,
        pulse: &PulseSpec,
        k_d: i64,
        freq_grid: &[f64],
    ) -> Result<Vec<Complex64>> {
        let omega_d = self.drive_frequency(k_d)?;
        if freq_grid.is_empty() {
            return Err(Error::InvalidPulse("spectrum grid is empty".into()));
        }
        let theta = pulse.phase(self, k_d);
        let tau = pulse.tau;
        // ∫₀^τ e^{ixt} dt = τ·e^{ixτ/2}·sinc(xτ/2)
        let window = |x: f64| Complex64::from_polar(tau * sinc(x * tau / 2.0), x * tau / 2.0);
        let transform = |w: f64| {
            let pos = window(omega_d - w) * Complex64::from_polar(1.0, theta);
            let neg = window(-(omega_d + w)) * Complex64::from_polar(1.0, -theta);
            (pos - neg) / Complex64::new(0.0, 2.0)
        };
        let peak = transform(omega_d).norm();
        Ok(freq_grid.iter().map(|&w| transform(w) / peak).collect())
    }
}

/// Pulse-width classification relative to `τ₀/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "class", content = "m", rename_all = "snake_case")]
pub enum PulseClass {
    Orthogonal(u32),
    QuasiOrthogonal(u32),
    NonOrthogonal,
}

impl PulseClass {
    pub fn order(&self) -> Option<u32> {
        match *self {
            Self::Orthogonal(m) | Self::QuasiOrthogonal(m) => Some(m),
            Self::NonOrthogonal => None,
        }
    }
}

/// Envelope shape. Only the rectangular window is supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Envelope {
    #[default]
    Rectangular,
}

impl Envelope {
    pub fn value(&self, t: f64, tau: f64) -> f64 {
        match self {
            Self::Rectangular => {
                if (0.0..=tau).contains(&t) {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}

/// Pulse applied identically on every drive tone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PulseSpec {
    pub tau: f64,
    pub phi: f64,
    pub alpha: f64,
    /// Per-tone phases indexed from `l_d`; empty means all zero.
    pub theta: Vec<f64>,
    pub envelope: Envelope,
}

impl PulseSpec {
    /// Rectangular pulse with the default amplitude `α = −φ/τ` and zero phases.
    pub fn new(tau: f64, phi: f64) -> Result<Self> {
        Self::with_alpha(tau, phi, -phi / tau)
    }

    pub fn with_alpha(tau: f64, phi: f64, alpha: f64) -> Result<Self> {
        if !(tau.is_finite() && tau > 0.0) {
            return Err(Error::InvalidPulse(format!(
                "pulse width must be positive, got {tau}"
            )));
        }
        if !phi.is_finite() || !alpha.is_finite() {
            return Err(Error::InvalidPulse(
                "rotation angle and amplitude must be finite".into(),
            ));
        }
        Ok(Self {
            tau,
            phi,
            alpha,
            theta: Vec::new(),
            envelope: Envelope::Rectangular,
        })
    }

    /// Width given in units of the plan's `τ₀`.
    pub fn from_ratio(plan: &FrequencyPlan, tau_over_tau0: f64, phi: f64) -> Result<Self> {
        Self::new(tau_over_tau0 * plan.tau0(), phi)
    }

    pub fn with_phases(mut self, theta: Vec<f64>) -> Self {
        self.theta = theta;
        self
    }

    pub fn has_default_amplitude(&self) -> bool {
        (self.alpha * self.tau + self.phi).abs() <= 1e-12 * self.phi.abs().max(1.0)
    }

    /// Phase of tone `k_d`; tones beyond the supplied list get zero.
    pub fn phase(&self, plan: &FrequencyPlan, k_d: i64) -> f64 {
        let idx = k_d - plan.l_d();
        usize::try_from(idx)
            .ok()
            .and_then(|i| self.theta.get(i).copied())
            .unwrap_or(0.0)
    }

    pub fn envelope_at(&self, t: f64) -> f64 {
        self.envelope.value(t, self.tau)
    }
}

/// Unnormalised sinc, `sin(x)/x` with `sinc(0) = 1`.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}
