//! Operators on the two-dimensional Hilbert space of a single qubit.
//!
//! [`Operator2`] is a dense 2×2 complex matrix. Hamiltonians that are
//! Hermitian are more cheaply handled through [`PauliVector`], the real
//! coefficients `(c0, cx, cy, cz)` of `c0·I + cx·σx + cy·σy + cz·σz`; its
//! exponential has a closed form and never goes through a generic
//! matrix-exponential routine.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense 2×2 complex matrix in the computational basis `{|0⟩, |1⟩}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Operator2 {
    pub m: [[Complex64; 2]; 2],
}

impl Operator2 {
    pub const fn new(m: [[Complex64; 2]; 2]) -> Self {
        Self { m }
    }

    pub const fn zero() -> Self {
        Self::new([[ZERO, ZERO], [ZERO, ZERO]])
    }

    pub const fn identity() -> Self {
        Self::new([[ONE, ZERO], [ZERO, ONE]])
    }

    pub const fn sigma_x() -> Self {
        Self::new([[ZERO, ONE], [ONE, ZERO]])
    }

    pub const fn sigma_y() -> Self {
        Self::new([[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]])
    }

    pub const fn sigma_z() -> Self {
        Self::new([[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]])
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let m = &self.m;
        Self::new([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn dagger(&self) -> Self {
        let m = &self.m;
        Self::new([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// `max |(U†U − I)_ij|`.
    pub fn unitarity_error(&self) -> f64 {
        (self.dagger() * *self - Self::identity()).max_abs()
    }

    /// `max |(H − H†)_ij|`.
    pub fn hermiticity_error(&self) -> f64 {
        (*self - self.dagger()).max_abs()
    }

    /// Complex Pauli coefficients `(c0, cx, cy, cz)` with `A = Σ c_i σ_i`.
    pub fn pauli_components(&self) -> [Complex64; 4] {
        let m = &self.m;
        [
            (m[0][0] + m[1][1]) * 0.5,
            (m[0][1] + m[1][0]) * 0.5,
            (m[1][0] - m[0][1]) * (I * -0.5),
            (m[0][0] - m[1][1]) * 0.5,
        ]
    }
}

impl Mul for Operator2 {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let a = &self.m;
        let b = &rhs.m;
        Self::new([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

impl Add for Operator2 {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for (row, rrow) in out.m.iter_mut().zip(rhs.m.iter()) {
            for (x, y) in row.iter_mut().zip(rrow.iter()) {
                *x += *y;
            }
        }
        out
    }
}

impl Sub for Operator2 {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + rhs.scale(-ONE)
    }
}

/// Real Pauli decomposition `c0·I + cx·σx + cy·σy + cz·σz` of a Hermitian operator.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PauliVector {
    pub c0: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl PauliVector {
    pub const fn new(c0: f64, x: f64, y: f64, z: f64) -> Self {
        Self { c0, x, y, z }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn to_operator(&self) -> Operator2 {
        let c0 = self.c0;
        Operator2::new([
            [
                Complex64::new(c0 + self.z, 0.0),
                Complex64::new(self.x, -self.y),
            ],
            [
                Complex64::new(self.x, self.y),
                Complex64::new(c0 - self.z, 0.0),
            ],
        ])
    }

    /// `exp(−i·h·(c0·I + a·σ)) = e^{−i c0 h}[cos(|a|h)·I − i·sin(|a|h)·(â·σ)]`.
    pub fn exp_neg_i(&self, h: f64) -> Operator2 {
        let r = self.norm();
        let theta = r * h;
        let c = theta.cos();
        // sin(|a|h)/|a|, continuous at |a| = 0.
        let s = if theta.abs() < 1e-8 {
            h * (1.0 - theta * theta / 6.0)
        } else {
            theta.sin() / r
        };
        let (x, y, z) = (self.x * s, self.y * s, self.z * s);
        let u = Operator2::new([
            [Complex64::new(c, -z), Complex64::new(-y, -x)],
            [Complex64::new(y, -x), Complex64::new(c, z)],
        ]);
        if self.c0 == 0.0 {
            u
        } else {
            u.scale(Complex64::from_polar(1.0, -self.c0 * h))
        }
    }
}

/// `exp(i(λx·σx + λy·σy + λz·σz))`.
pub fn su2_exp_i(lx: f64, ly: f64, lz: f64) -> Operator2 {
    PauliVector::new(0.0, lx, ly, lz).exp_neg_i(-1.0)
}
