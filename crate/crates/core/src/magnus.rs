//! First- and second-order Magnus coefficients of the RWA drive Hamiltonian.
//!
//! Writing `Ω₁(τ) ≈ −(λx·σx + λy·σy)` and `Ω₂(τ) ≈ −λz·σz`, the gate
//! `U_Magnus = exp[−i(Ω₁ + Ω₂)] = exp[i(λx·σx + λy·σy + λz·σz)]` is fully
//! described by the three real numbers in [`MagnusCoefficients`].
//!
//! The closed forms assume the target qubit has its resonant tone inside
//! `K_d`; they return [`Error::NoResonantTone`] otherwise.

pub mod oracle;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{su2_exp_i, Operator2};
use crate::plan::{sinc, FrequencyPlan, PulseSpec};

pub use oracle::omega_quadrature_oracle;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MagnusCoefficients {
    pub lambda_x: f64,
    pub lambda_y: f64,
    pub lambda_z: f64,
    pub capital_lambda: f64,
}

impl MagnusCoefficients {
    pub fn new(lambda_x: f64, lambda_y: f64, lambda_z: f64) -> Self {
        Self {
            lambda_x,
            lambda_y,
            lambda_z,
            capital_lambda: (lambda_x * lambda_x + lambda_y * lambda_y + lambda_z * lambda_z)
                .sqrt(),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.lambda_x - other.lambda_x)
            .abs()
            .max((self.lambda_y - other.lambda_y).abs())
            .max((self.lambda_z - other.lambda_z).abs())
    }
}

fn require_resonant_tone(plan: &FrequencyPlan, k_q: i64) -> Result<()> {
    plan.check_qubit(k_q)?;
    if plan.contains_drive(k_q) {
        Ok(())
    } else {
        Err(Error::NoResonantTone { k_q })
    }
}

/// Closed-form coefficients for an arbitrary pulse width.
pub fn lambda_general(
    plan: &FrequencyPlan,
    pulse: &PulseSpec,
    k_q: i64,
) -> Result<MagnusCoefficients> {
    require_resonant_tone(plan, k_q)?;
    let gamma = plan.gamma_set(k_q)?;
    let tau = pulse.tau;
    let alpha = pulse.alpha;
    let det = |k: i64| (k - k_q) as f64 * plan.delta();
    let off_resonant: Vec<i64> = plan.drive_indices().filter(|&k| k != k_q).collect();

    let lambda_x = 0.5
        * alpha
        * tau
        * (1.0
            + off_resonant
                .iter()
                .map(|&k| sinc(det(k) * tau))
                .sum::<f64>());

    let lambda_y = -0.5
        * alpha
        * tau
        * gamma
            .iter()
            .map(|&k| {
                let half = det(k) * tau / 2.0;
                half.sin() * sinc(half)
            })
            .sum::<f64>();

    let mut z = 0.0;
    for &k in &gamma {
        let dk = det(k);
        z += ((dk * tau).cos() - 1.5 * sinc(dk * tau)) / dk;
        for &j in &off_resonant {
            let dj = det(j);
            z += sinc(dj * tau) / dk + sinc((dk + dj) * tau) / (2.0 * dj);
        }
    }
    for k in plan.drive_indices() {
        let dk = det(k);
        for &j in &gamma {
            let dj = det(j);
            z -= sinc((dk + dj) * tau) / (2.0 * dj);
        }
    }
    for &k in &gamma {
        let dk = det(k);
        for &j in off_resonant.iter().filter(|&&j| j != k) {
            let dj = det(j);
            z -= (1.0 / dk + 1.0 / dj) * sinc((k - j) as f64 * plan.delta() * tau) / 2.0;
        }
    }
    let lambda_z = alpha * alpha * tau / 4.0 * z;

    Ok(MagnusCoefficients::new(lambda_x, lambda_y, lambda_z))
}

/// Closed-form coefficients for `τ = m·τ₀/2` with the default amplitude `α = −φ/τ`.
pub fn lambda_orthogonal(
    plan: &FrequencyPlan,
    pulse: &PulseSpec,
    k_q: i64,
    m: u32,
) -> Result<MagnusCoefficients> {
    if plan.classify_pulse_width(pulse.tau).order() != Some(m) {
        return Err(Error::NonOrthogonalWidth {
            tau_over_tau0: pulse.tau / plan.tau0(),
        });
    }
    if !pulse.has_default_amplitude() {
        return Err(Error::NonDefaultAmplitude);
    }
    require_resonant_tone(plan, k_q)?;
    let phi = pulse.phi;
    let mf = m as f64;
    let (mut y, mut z) = (0.0, 0.0);
    for k in plan.gamma_set(k_q)? {
        let n = k - k_q;
        let sign = parity_sign(m as i64 * n);
        y += (sign - 1.0) / n as f64;
        z += sign / n as f64;
    }
    Ok(MagnusCoefficients::new(
        -phi / 2.0,
        -phi / (2.0 * PI * mf) * y,
        phi * phi / (4.0 * PI * mf) * z,
    ))
}

fn parity_sign(n: i64) -> f64 {
    if n.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `G(k_q, m, γ) = Σ_{k∈γ} (−1)^{m(k − k_q)}`.
pub fn g_function(k_q: i64, m: u32, gamma: &[i64]) -> i64 {
    gamma
        .iter()
        .map(|&k| {
            if (m as i64 * (k - k_q)).rem_euclid(2) == 0 {
                1
            } else {
                -1
            }
        })
        .sum()
}

/// The large-`N_d` formulas are only trusted for `N_d > 4(|k_q| + 1)`.
pub fn lambda_validity_gate(plan: &FrequencyPlan, k_q: i64) -> Result<()> {
    plan.check_qubit(k_q)?;
    if (plan.n_d() as i64) > 4 * (k_q.abs() + 1) {
        Ok(())
    } else {
        Err(Error::ValidityGate {
            n_d: plan.n_d(),
            k_q,
        })
    }
}

/// Large-`N_d` estimates of `(|λy|, |λz|)` for `τ = m·τ₀/2`.
pub fn lambda_approx(
    plan: &FrequencyPlan,
    pulse: &PulseSpec,
    k_q: i64,
    m: u32,
) -> Result<(f64, f64)> {
    lambda_validity_gate(plan, k_q)?;
    let gamma = plan.gamma_set(k_q)?;
    let g = g_function(k_q, m, &gamma) as f64;
    let denom = PI * m as f64 * plan.n_d() as f64;
    let phi = pulse.phi;
    Ok((
        phi.abs() / denom * (gamma.len() as f64 - g).abs(),
        phi * phi / (2.0 * denom) * g.abs(),
    ))
}

/// `exp[i(λx·σx + λy·σy + λz·σz)]`.
pub fn u_magnus(coeffs: &MagnusCoefficients) -> Operator2 {
    su2_exp_i(coeffs.lambda_x, coeffs.lambda_y, coeffs.lambda_z)
}
