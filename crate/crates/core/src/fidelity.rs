//! Average gate fidelity and the analytic infidelity estimates.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::magnus::{g_function, lambda_validity_gate, MagnusCoefficients};
use crate::operator::{Operator2, PauliVector};
use crate::plan::FrequencyPlan;

/// Hilbert-space dimension of a single qubit.
pub const DIM: usize = 2;

/// Inputs to [`average_gate_fidelity`] must be unitary to this tolerance.
pub const UNITARITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GateScore {
    pub fidelity: f64,
    pub infidelity: f64,
    pub dimension: usize,
}

impl GateScore {
    fn from_fidelity(fidelity: f64) -> Self {
        Self {
            fidelity,
            infidelity: 1.0 - fidelity,
            dimension: DIM,
        }
    }
}

/// `F(U₁, U₂) = (|Tr(U₁†U₂)|² + d) / (d(d + 1))`.
pub fn average_gate_fidelity(u1: &Operator2, u2: &Operator2) -> Result<GateScore> {
    for u in [u1, u2] {
        let err = u.unitarity_error();
        if err > UNITARITY_TOL || !err.is_finite() {
            return Err(Error::NonUnitary(err));
        }
    }
    let d = DIM as f64;
    let overlap = (u1.dagger() * *u2).trace().norm_sqr();
    Ok(GateScore::from_fidelity((overlap + d) / (d * (d + 1.0))))
}

/// Target x-rotation `exp(−i(φ/2)σx)`.
pub fn ideal_unitary(phi: f64) -> Operator2 {
    PauliVector::new(0.0, 1.0, 0.0, 0.0).exp_neg_i(phi / 2.0)
}

/// Closed-form `1 − F(U_ideal(φ), U_Magnus)` in terms of the Magnus coefficients.
pub fn analytic_infidelity(coeffs: &MagnusCoefficients, phi: f64) -> f64 {
    let big = coeffs.capital_lambda;
    let sin_over = if big < 1e-8 {
        1.0 - big * big / 6.0
    } else {
        big.sin() / big
    };
    let sign = if phi < 0.0 { -1.0 } else { 1.0 };
    let half = (phi / 2.0).abs();
    let amp = half.cos() * big.cos() - sign * coeffs.lambda_x * half.sin() * sin_over;
    1.0 - (2.0 * amp * amp + 1.0) / 3.0
}

/// Large-`N_d` estimate
/// `[4(|γ| − G)² + φ²G²] / (3π²m²N_d²)` for an orthogonal or quasi-orthogonal width.
pub fn approx_infidelity(plan: &FrequencyPlan, k_q: i64, m: u32, phi: f64) -> Result<f64> {
    lambda_validity_gate(plan, k_q)?;
    let gamma = plan.gamma_set(k_q)?;
    let g = g_function(k_q, m, &gamma) as f64;
    let card = gamma.len() as f64;
    let n_d = plan.n_d() as f64;
    let m = m as f64;
    let pi2 = std::f64::consts::PI.powi(2);
    Ok((4.0 * (card - g).powi(2) + phi * phi * g * g) / (3.0 * pi2 * m * m * n_d * n_d))
}
