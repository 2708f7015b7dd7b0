//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Sweeps are computed once at the default resolution and shared between
//! criteria. The process exits nonzero if any criterion fails.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fdmq::config::{ExperimentKind, RunConfig};
use fdmq::dynamics::lab_to_rotating;
use fdmq::experiments::{
    argmin_shift, fit_loglog_slope, sweep_nd, sweep_shift_grid, sweep_tau_grid, Engine, SecondAxis,
    SweepResult,
};
use fdmq::fidelity::{analytic_infidelity, average_gate_fidelity, ideal_unitary};
use fdmq::io::engine_for;
use fdmq::magnus::oracle::omega_quadrature_oracle;
use fdmq::magnus::{g_function, lambda_general, lambda_orthogonal, u_magnus};
use fdmq::operator::su2_exp_i;
use fdmq::{FrameTag, FrequencyPlan, Integrator, MagnusCoefficients, PulseSpec};

const GHZ: f64 = 1e9;

const SLOPE_RANGE: [f64; 2] = [-2.5, -1.9];
const VALUE_REL_TOL: f64 = 0.15;
const REDUCTION_TOL_POINTS: f64 = 5.0;
const CONSTANT_RATIO_MAX: f64 = 3.0;
const ORACLE_TOL: f64 = 1e-8;
const REDUCTION_IDENTITY_TOL: f64 = 1e-12;
const FIDELITY_TOL: f64 = 1e-12;
const UNITARITY_TOL: f64 = 1e-10;
const HALVING_REL_TOL: f64 = 0.01;
const FRAME_TOL: f64 = 1e-8;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Every sweep the criteria read from.
struct Runs {
    nd: SweepResult,
    tau: SweepResult,
    shift_omega: SweepResult,
    shift_nd: SweepResult,
}

impl Runs {
    fn compute(steps_per_period: u32) -> Self {
        let engine = |cfg: &RunConfig| {
            let mut e = engine_for(cfg).unwrap();
            e.integrator = Integrator::new(steps_per_period);
            e
        };
        let nd_cfg = RunConfig::preset(ExperimentKind::NdSweep);
        let mut tau_cfg = RunConfig::preset(ExperimentKind::TauGrid);
        tau_cfg.experiment.tau_ratios = Some(vec![0.5, 0.75, 1.0]);
        let omega_cfg = RunConfig::preset(ExperimentKind::ShiftGridOmega);
        let nd_shift_cfg = RunConfig::preset(ExperimentKind::ShiftGridNd);
        Self {
            nd: sweep_nd(&nd_cfg, &engine(&nd_cfg)).unwrap(),
            tau: sweep_tau_grid(&tau_cfg, &engine(&tau_cfg)).unwrap(),
            shift_omega: sweep_shift_grid(&omega_cfg, &engine(&omega_cfg), SecondAxis::OmegaQ0)
                .unwrap(),
            shift_nd: sweep_shift_grid(&nd_shift_cfg, &engine(&nd_shift_cfg), SecondAxis::NDrive)
                .unwrap(),
        }
    }

    fn all(&self) -> [&SweepResult; 4] {
        [&self.nd, &self.tau, &self.shift_omega, &self.shift_nd]
    }
}

fn mean_at(result: &SweepResult, coords: &[f64]) -> f64 {
    result
        .rows
        .iter()
        .find(|r| {
            r.coords
                .iter()
                .zip(coords)
                .all(|(c, &v)| (c.as_f64() - v).abs() <= 1e-9 * v.abs().max(1.0))
        })
        .and_then(|r| r.mean_infidelity)
        .unwrap_or_else(|| panic!("{} has no point at {coords:?}", result.name))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn scaling_law(runs: &Runs) -> Outcome {
    let fit = fit_loglog_slope(&runs.nd, "n_d", 11.0, 21.0).map_err(|e| e.to_string())?;
    check(
        (SLOPE_RANGE[0]..=SLOPE_RANGE[1]).contains(&fit.slope),
        format!(
            "slope {:.4} on N_d in [11, 21], want [{}, {}]",
            fit.slope, SLOPE_RANGE[0], SLOPE_RANGE[1]
        ),
    )
}

/// `(argmin S_d, mean at S_d = 0, mean at the optimum, reduction in percent)`.
fn shift_column(result: &SweepResult, column: &str, at: f64) -> (i64, f64, f64, f64) {
    let optima = argmin_shift(result, column, "s_d").unwrap();
    let opt = optima
        .iter()
        .find(|o| (o.column.as_f64() - at).abs() <= 1e-9 * at)
        .unwrap();
    let base = mean_at(result, &[at, 0.0]);
    (
        opt.s_d,
        base,
        opt.mean_infidelity,
        100.0 * (base - opt.mean_infidelity) / base,
    )
}

fn shift_compensation(
    result: &SweepResult,
    column: &str,
    at: f64,
    want_shift: i64,
    want_reduction: f64,
    want_values: [f64; 2],
) -> Outcome {
    let (s_d, base, best, reduction) = shift_column(result, column, at);
    let ok = s_d == want_shift
        && (reduction - want_reduction).abs() <= REDUCTION_TOL_POINTS
        && rel(base, want_values[0]) <= VALUE_REL_TOL
        && rel(best, want_values[1]) <= VALUE_REL_TOL;
    check(
        ok,
        format!(
            "argmin S_d {s_d} (want {want_shift}), {base:.4e} -> {best:.4e} (want {:.3e} -> {:.3e}), reduction {reduction:.1}% (want {want_reduction}%)",
            want_values[0], want_values[1]
        ),
    )
}

fn shift_low_frequency(runs: &Runs) -> Outcome {
    shift_compensation(
        &runs.shift_omega,
        "omega_q0_hz",
        1.0 * GHZ,
        -1,
        30.3,
        [1.45e-3, 1.01e-3],
    )
}

fn shift_high_frequency(runs: &Runs) -> Outcome {
    let optima =
        argmin_shift(&runs.shift_omega, "omega_q0_hz", "s_d").map_err(|e| e.to_string())?;
    let high: Vec<_> = optima
        .iter()
        .filter(|o| o.column.as_f64() >= 2.5 * GHZ - 1.0)
        .collect();
    let bad: Vec<String> = high
        .iter()
        .filter(|o| o.s_d != 0)
        .map(|o| {
            let f = o.column.as_f64();
            format!(
                "{} GHz -> S_d {} ({:.4e} vs {:.4e} at S_d = 0)",
                f / GHZ,
                o.s_d,
                o.mean_infidelity,
                mean_at(&runs.shift_omega, &[f, 0.0])
            )
        })
        .collect();
    check(
        !high.is_empty() && bad.is_empty(),
        if bad.is_empty() {
            format!(
                "argmin S_d = 0 at all {} frequencies >= 2.5 GHz",
                high.len()
            )
        } else {
            format!("argmin S_d != 0 at {}", bad.join("; "))
        },
    )
}

fn shift_vs_tone_count(runs: &Runs) -> Outcome {
    shift_compensation(&runs.shift_nd, "n_d", 31.0, -2, 52.3, [9.22e-4, 4.39e-4])
}

fn orthogonality(runs: &Runs) -> Outcome {
    let column = |ratio: f64| -> Vec<f64> {
        (11..=21)
            .step_by(2)
            .map(|n_d| mean_at(&runs.tau, &[n_d as f64, ratio]))
            .collect()
    };
    let decreasing = |v: &[f64]| v.windows(2).all(|w| w[1] < w[0]);
    let (full, half, off) = (column(1.0), column(0.5), column(0.75));
    let max = off.iter().cloned().fold(f64::MIN, f64::max);
    let min = off.iter().cloned().fold(f64::MAX, f64::min);
    check(
        decreasing(&full) && decreasing(&half) && max / min < CONSTANT_RATIO_MAX,
        format!(
            "odd N_d 11..21: decreasing at tau0 {}, at tau0/2 {}; max/min at 0.75 tau0 = {:.3} (want < {CONSTANT_RATIO_MAX})",
            decreasing(&full),
            decreasing(&half),
            max / min
        ),
    )
}

fn random_resonant_case(rng: &mut ChaCha8Rng) -> (FrequencyPlan, PulseSpec, i64) {
    loop {
        let n_q = 2 * rng.gen_range(0..4) + 1;
        let n_d = rng.gen_range(1..=15);
        let s_d = rng.gen_range(-2..=2);
        let f = rng.gen_range(1.0..6.0) * GHZ;
        let spacing = rng.gen_range(5e6..20e6);
        let Ok(plan) = FrequencyPlan::from_hz(f, spacing, n_q, n_d, s_d) else {
            continue;
        };
        let resonant: Vec<i64> = plan
            .qubit_indices()
            .filter(|&k| plan.contains_drive(k))
            .collect();
        if resonant.is_empty() {
            continue;
        }
        let k_q = resonant[rng.gen_range(0..resonant.len())];
        let phi = rng.gen_range(0.1..PI);
        let pulse = PulseSpec::from_ratio(&plan, rng.gen_range(0.05..2.5), phi).unwrap();
        return (plan, pulse, k_q);
    }
}

fn oracle_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut worst_oracle: f64 = 0.0;
    for _ in 0..50 {
        let (plan, pulse, k_q) = random_resonant_case(&mut rng);
        let closed = lambda_general(&plan, &pulse, k_q).map_err(|e| e.to_string())?;
        let oracle = omega_quadrature_oracle(&plan, &pulse, k_q).map_err(|e| e.to_string())?;
        worst_oracle = worst_oracle.max(closed.max_abs_diff(&oracle));
    }

    let mut worst_reduction: f64 = 0.0;
    for m in 1..=6u32 {
        for n_d in 7..=21 {
            let plan = FrequencyPlan::from_hz(5.0 * GHZ, 10e6, 7, n_d, 0).unwrap();
            let pulse = PulseSpec::from_ratio(&plan, m as f64 / 2.0, FRAC_PI_2).unwrap();
            for k_q in plan.qubit_indices() {
                let a = lambda_general(&plan, &pulse, k_q).map_err(|e| e.to_string())?;
                let b = lambda_orthogonal(&plan, &pulse, k_q, m).map_err(|e| e.to_string())?;
                worst_reduction = worst_reduction.max(a.max_abs_diff(&b));
            }
        }
    }

    let mut g_mismatch = 0;
    for _ in 0..2000 {
        let k_q = rng.gen_range(-10..=10);
        let m = rng.gen_range(1..=12);
        let len = rng.gen_range(0..=12);
        let mut gamma: Vec<i64> = (0..len).map(|_| rng.gen_range(-40..=40)).collect();
        gamma.sort_unstable();
        gamma.dedup();
        let brute: f64 = gamma
            .iter()
            .map(|&k| (-1.0f64).powi((m as i64 * (k - k_q)) as i32))
            .sum();
        if g_function(k_q, m, &gamma) as f64 != brute {
            g_mismatch += 1;
        }
    }

    check(
        worst_oracle <= ORACLE_TOL && worst_reduction <= REDUCTION_IDENTITY_TOL && g_mismatch == 0,
        format!(
            "closed form vs quadrature max {worst_oracle:.2e} (50 cases, tol {ORACLE_TOL:e}); general vs orthogonal max {worst_reduction:.2e} (m 1..6, tol {REDUCTION_IDENTITY_TOL:e}); G mismatches {g_mismatch}/2000"
        ),
    )
}

fn fidelity_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut worst_eq: f64 = 0.0;
    let mut worst_phase: f64 = 0.0;
    let mut worst_self: f64 = 0.0;
    for _ in 0..100 {
        let c = MagnusCoefficients::new(
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let phi = rng.gen_range(-2.0 * PI..2.0 * PI);
        let u = u_magnus(&c);
        let direct = average_gate_fidelity(&ideal_unitary(phi), &u)
            .unwrap()
            .infidelity;
        worst_eq = worst_eq.max((analytic_infidelity(&c, phi) - direct).abs());

        let phase = Complex64::from_polar(1.0, rng.gen_range(0.0..TAU));
        let shifted = average_gate_fidelity(&ideal_unitary(phi), &u.scale(phase))
            .unwrap()
            .infidelity;
        worst_phase = worst_phase.max((shifted - direct).abs());

        let v = su2_exp_i(
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
        );
        worst_self = worst_self.max((average_gate_fidelity(&v, &v).unwrap().fidelity - 1.0).abs());
    }
    check(
        worst_eq <= FIDELITY_TOL && worst_phase <= FIDELITY_TOL && worst_self <= FIDELITY_TOL,
        format!("closed form vs direct {worst_eq:.1e}, global phase {worst_phase:.1e}, F(U,U) - 1 {worst_self:.1e} over 100 triples (tol {FIDELITY_TOL:e})"),
    )
}

fn propagator_integrity(runs: &Runs, doubled: &Runs) -> Outcome {
    let unitarity = runs
        .all()
        .iter()
        .chain(doubled.all().iter())
        .flat_map(|r| r.rows.iter())
        .map(|row| row.max_unitarity_error)
        .fold(0.0, f64::max);
    let failed: usize = runs
        .all()
        .iter()
        .flat_map(|r| r.rows.iter())
        .filter(|r| r.error.is_some())
        .count();

    let mut worst_halving: f64 = 0.0;
    for (a, b) in runs.all().iter().zip(doubled.all()) {
        for (ra, rb) in a.rows.iter().zip(&b.rows) {
            for (x, y) in ra.per_qubit.iter().zip(&rb.per_qubit) {
                if let (Some(x), Some(y)) = (x, y) {
                    worst_halving = worst_halving.max(rel(*x, *y));
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut worst_frame: f64 = 0.0;
    for _ in 0..10 {
        let f = rng.gen_range(0.3..2.0) * GHZ;
        let n_d = rng.gen_range(1..=9);
        let plan = FrequencyPlan::from_hz(f, 10e6, 7, n_d, rng.gen_range(-1..=1)).unwrap();
        let k_q = rng.gen_range(plan.l_q()..=plan.r_q());
        let pulse =
            PulseSpec::from_ratio(&plan, rng.gen_range(0.2..1.5), rng.gen_range(0.1..PI)).unwrap();
        let lab = Integrator::new(65536)
            .propagate(&plan, &pulse, k_q, FrameTag::Lab)
            .unwrap();
        let rot = Integrator::new(8192)
            .propagate(&plan, &pulse, k_q, FrameTag::Rotating)
            .unwrap();
        let mapped = lab_to_rotating(&lab, plan.qubit_frequency(k_q).unwrap(), pulse.tau);
        worst_frame = worst_frame.max((mapped - rot).max_abs());
    }

    check(
        unitarity <= UNITARITY_TOL && failed == 0 && worst_halving <= HALVING_REL_TOL && worst_frame <= FRAME_TOL,
        format!(
            "max unitarity error {unitarity:.1e} (tol {UNITARITY_TOL:e}), failed points {failed}, step halving max rel change {worst_halving:.1e} (tol {HALVING_REL_TOL}), lab vs rotating max {worst_frame:.1e} over 10 configs (tol {FRAME_TOL:e})"
        ),
    )
}

fn rwa_limit() -> Outcome {
    let integrator = Integrator::default();
    let mut gaps = Vec::new();
    for f in [1.0, 2.5, 5.0, 10.0, 20.0] {
        let plan = FrequencyPlan::from_hz(f * GHZ, 10e6, 7, 21, 0).unwrap();
        let pulse = PulseSpec::from_ratio(&plan, 1.0, FRAC_PI_2).unwrap();
        let inf = |frame| {
            Engine::new(integrator, frame)
                .qubit_outcome(&plan, &pulse, 0)
                .unwrap()
                .infidelity
        };
        gaps.push((inf(FrameTag::Rotating) - inf(FrameTag::Rwa)).abs());
    }
    check(
        gaps.windows(2).all(|w| w[1] < w[0]),
        format!(
            "|rotating - rwa| at 1, 2.5, 5, 10, 20 GHz: {}",
            gaps.iter()
                .map(|g| format!("{g:.3e}"))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let runs = Runs::compute(64);
    let doubled = Runs::compute(128);
    let results: Vec<(&str, Outcome)> = vec![
        ("scaling law", scaling_law(&runs)),
        ("shift compensation at 1 GHz", shift_low_frequency(&runs)),
        ("no shift needed at >= 2.5 GHz", shift_high_frequency(&runs)),
        ("shift vs tone count", shift_vs_tone_count(&runs)),
        ("orthogonality condition", orthogonality(&runs)),
        ("closed-form correctness", oracle_suite()),
        ("fidelity identities", fidelity_identities()),
        (
            "propagator integrity",
            propagator_integrity(&runs, &doubled),
        ),
        ("RWA limit", rwa_limit()),
    ];
    let mut failures = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed in {:.1}s",
        results.len() - failures,
        start.elapsed().as_secs_f64()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
