//! Adaptive Gauss–Kronrod (7/15) quadrature for small fixed-size vector integrands.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_DEPTH: u32 = 48;

/// Integrates `f` over `[a, b]` until the Gauss/Kronrod difference of every
/// component is below `abs_tol` (split evenly between sub-intervals).
pub fn integrate<const N: usize, F>(f: &F, a: f64, b: f64, abs_tol: f64) -> Result<[f64; N]>
where
    F: Fn(f64) -> [f64; N],
{
    recurse(f, a, b, abs_tol, 0)
}

fn recurse<const N: usize, F>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> Result<[f64; N]>
where
    F: Fn(f64) -> [f64; N],
{
    let (kronrod, err) = gk15(f, a, b);
    if err <= tol {
        return Ok(kronrod);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::Quadrature(err));
    }
    let mid = 0.5 * (a + b);
    let left = recurse(f, a, mid, tol / 2.0, depth + 1)?;
    let right = recurse(f, mid, b, tol / 2.0, depth + 1)?;
    let mut out = [0.0; N];
    for i in 0..N {
        out[i] = left[i] + right[i];
    }
    Ok(out)
}

fn gk15<const N: usize, F>(f: &F, a: f64, b: f64) -> ([f64; N], f64)
where
    F: Fn(f64) -> [f64; N],
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut k = [0.0; N];
    let mut g = [0.0; N];
    for (j, (&x, &wk)) in XGK.iter().zip(WGK.iter()).enumerate() {
        let points: &[f64] = if x == 0.0 { &[0.0] } else { &[-x, x] };
        for &s in points {
            let v = f(center + half * s);
            for i in 0..N {
                k[i] += wk * v[i];
                if j % 2 == 1 {
                    g[i] += WG[j / 2] * v[i];
                }
            }
        }
    }
    let mut err: f64 = 0.0;
    for i in 0..N {
        k[i] *= half;
        g[i] *= half;
        err = err.max((k[i] - g[i]).abs());
    }
    (k, err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(&|x: f64| [x.powi(7) - 3.0 * x * x], 0.0, 2.0, 1e-14).unwrap();
        assert!((r[0] - (32.0 - 8.0)).abs() < 1e-12);
    }

    #[test]
    fn oscillatory_integrand() {
        let w = 40.0;
        let r = integrate(&|x: f64| [(w * x).cos(), (w * x).sin()], 0.0, 3.0, 1e-12).unwrap();
        assert!((r[0] - (3.0 * w).sin() / w).abs() < 1e-12);
        assert!((r[1] - (1.0 - (3.0 * w).cos()) / w).abs() < 1e-12);
    }

    #[test]
    fn reports_non_convergence() {
        let r = integrate(
            &|x: f64| [1.0 / x.abs().sqrt().max(1e-300)],
            -1.0,
            1.0,
            1e-300,
        );
        assert!(matches!(r, Err(Error::Quadrature(_))));
    }
}
