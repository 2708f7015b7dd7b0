//! Simulation and analytics for frequency-division-multiplexed single-qubit
//! gates driven through a shared line.
//!
//! - [`plan`]: comb geometry, `γ` sets, pulse-width classification, spectra.
//! - [`dynamics`]: lab, rotating and RWA Hamiltonians and the midpoint propagator.
//! - [`magnus`]: closed-form and quadrature Magnus coefficients.
//! - [`fidelity`]: average gate fidelity and analytic infidelity estimates.
//! - [`experiments`]: sweep engine and the experiment registry.
//! - [`config`] / [`io`]: TOML run configuration, CSV/JSON artifacts.

pub mod config;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod fidelity;
pub mod io;
pub mod magnus;
pub mod operator;
pub mod plan;
pub mod quadrature;

pub use config::{parse_config, ExperimentKind, RunConfig};
pub use dynamics::{FrameTag, Integrator};
pub use error::{Error, Result};
pub use magnus::MagnusCoefficients;
pub use operator::{Operator2, PauliVector};
pub use plan::{FrequencyPlan, PulseClass, PulseSpec};
