use serde::Serialize;

use super::result::{AxisValue, SweepResult};
use crate::error::{Error, Result};

/// Least-squares line through `(ln x, ln y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    pub range: [f64; 2],
    /// Root-mean-square residual in log space.
    pub residual: f64,
    pub points: usize,
}

/// Fits `ln y = slope·ln x + intercept` to points with `x ∈ [lo, hi]` and `y > 0`.
pub fn fit_power_law(xs: &[f64], ys: &[f64], lo: f64, hi: f64) -> Result<SlopeFit> {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|&(&x, &y)| x >= lo && x <= hi && x > 0.0 && y > 0.0 && y.is_finite())
        .map(|(&x, &y)| (x.ln(), y.ln()))
        .collect();
    let n = pts.len();
    if n < 3 {
        return Err(Error::InsufficientPoints(n));
    }
    let nf = n as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / nf;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientPoints(1));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (pts
        .iter()
        .map(|p| (p.1 - slope * p.0 - intercept).powi(2))
        .sum::<f64>()
        / nf)
        .sqrt();
    Ok(SlopeFit {
        slope,
        intercept,
        range: [lo, hi],
        residual,
        points: n,
    })
}

/// Log-log slope of the mean infidelity against `axis` over `[lo, hi]`.
pub fn fit_loglog_slope(result: &SweepResult, axis: &str, lo: f64, hi: f64) -> Result<SlopeFit> {
    let idx = result
        .axis_index(axis)
        .ok_or_else(|| Error::Config(format!("result `{}` has no axis `{axis}`", result.name)))?;
    let (xs, ys): (Vec<f64>, Vec<f64>) = result
        .rows
        .iter()
        .filter_map(|r| r.mean_infidelity.map(|m| (r.coords[idx].as_f64(), m)))
        .unzip();
    fit_power_law(&xs, &ys, lo, hi)
}

/// Best shift for one column of a shift grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShiftOptimum {
    pub column: AxisValue,
    pub s_d: i64,
    pub mean_infidelity: f64,
}

/// Per-column argmin over `shift_axis`. Ties go to the smaller `|S_d|`, then to the negative side.
pub fn argmin_shift(
    result: &SweepResult,
    column_axis: &str,
    shift_axis: &str,
) -> Result<Vec<ShiftOptimum>> {
    let ci = result
        .axis_index(column_axis)
        .ok_or_else(|| Error::Config(format!("no axis `{column_axis}`")))?;
    let si = result
        .axis_index(shift_axis)
        .ok_or_else(|| Error::Config(format!("no axis `{shift_axis}`")))?;
    let mut out: Vec<ShiftOptimum> = Vec::new();
    for row in &result.rows {
        let Some(mean) = row.mean_infidelity else {
            continue;
        };
        let column = row.coords[ci];
        let s_d = row.coords[si].as_f64() as i64;
        let candidate = ShiftOptimum {
            column,
            s_d,
            mean_infidelity: mean,
        };
        match out.iter_mut().find(|o| o.column == column) {
            None => out.push(candidate),
            Some(best) => {
                if better(&candidate, best) {
                    *best = candidate;
                }
            }
        }
    }
    Ok(out)
}

fn better(a: &ShiftOptimum, b: &ShiftOptimum) -> bool {
    if a.mean_infidelity != b.mean_infidelity {
        return a.mean_infidelity < b.mean_infidelity;
    }
    (a.s_d.abs(), a.s_d) < (b.s_d.abs(), b.s_d)
}

/// `A = Σ_{k>0} [inf(−k) − inf(k)]` over a per-qubit profile.
pub fn asymmetry_statistic(qubits: &[i64], infidelity: &[Option<f64>]) -> Option<f64> {
    let lookup = |k: i64| {
        qubits
            .iter()
            .position(|&q| q == k)
            .and_then(|i| infidelity[i])
    };
    qubits
        .iter()
        .filter(|&&k| k > 0)
        .map(|&k| Some(lookup(-k)? - lookup(k)?))
        .sum()
}

/// `Σ_{k>0} ln[inf(−k)/inf(k)]`, the scale-free counterpart of [`asymmetry_statistic`].
///
/// Tracks the left/right imbalance as it appears on a logarithmic profile
/// plot, independent of the overall infidelity level.
pub fn log_asymmetry_statistic(qubits: &[i64], infidelity: &[Option<f64>]) -> Option<f64> {
    let lookup = |k: i64| {
        qubits
            .iter()
            .position(|&q| q == k)
            .and_then(|i| infidelity[i])
            .filter(|&v| v > 0.0)
    };
    qubits
        .iter()
        .filter(|&&k| k > 0)
        .map(|&k| Some((lookup(-k)? / lookup(k)?).ln()))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let xs: Vec<f64> = (5..=30).map(f64::from).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.7 * x.powi(-2)).collect();
        let fit = fit_power_law(&xs, &ys, 11.0, 21.0).unwrap();
        assert!((fit.slope + 2.0).abs() < 1e-9);
        assert!((fit.intercept - 3.7f64.ln()).abs() < 1e-9);
        assert_eq!(fit.points, 11);
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn constant_data_has_zero_slope() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let fit = fit_power_law(&xs, &[0.5; 4], 0.0, 10.0).unwrap();
        assert!(fit.slope.abs() < 1e-15);
    }

    #[test]
    fn too_few_points() {
        let r = fit_power_law(&[1.0, 2.0, 3.0], &[1.0, 0.0, 2.0], 0.0, 10.0);
        assert!(matches!(r, Err(Error::InsufficientPoints(2))));
    }

    #[test]
    fn tie_breaking_prefers_small_then_negative_shift() {
        let mk = |s_d, m| ShiftOptimum {
            column: AxisValue::Int(0),
            s_d,
            mean_infidelity: m,
        };
        assert!(better(&mk(0, 1.0), &mk(-1, 1.0)));
        assert!(better(&mk(-1, 1.0), &mk(1, 1.0)));
        assert!(better(&mk(2, 0.5), &mk(0, 1.0)));
    }

    #[test]
    fn asymmetry_sums_mirror_differences() {
        let q = [-2, -1, 0, 1, 2];
        let v = [Some(5.0), Some(3.0), Some(1.0), Some(2.0), Some(1.0)];
        assert_eq!(asymmetry_statistic(&q, &v), Some(1.0 + 4.0));
        let v = [Some(5.0), None, Some(1.0), Some(2.0), Some(1.0)];
        assert_eq!(asymmetry_statistic(&q, &v), None);
    }

    #[test]
    fn log_asymmetry_is_scale_free() {
        let q = [-1, 0, 1];
        let v = [Some(4e-3), Some(1e-5), Some(1e-3)];
        let scaled: Vec<Option<f64>> = v.iter().map(|x| x.map(|y| 7.0 * y)).collect();
        let a = log_asymmetry_statistic(&q, &v).unwrap();
        assert!((a - 4f64.ln()).abs() < 1e-15);
        assert!((log_asymmetry_statistic(&q, &scaled).unwrap() - a).abs() < 1e-14);
        assert_eq!(
            log_asymmetry_statistic(&q, &[Some(1.0), None, Some(0.0)]),
            None
        );
    }
}
