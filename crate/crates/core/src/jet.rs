//! Forward-mode differentiation carriers.
//!
//! [`Jet2`] is a second-order truncated Taylor expansion in four variables
//! and is what metric components are expressed in. [`Dual`] adds one more
//! derivative layer over any [`Scalar`], so that evaluating a function with
//! `Dual<Jet2>` yields both the function and its first partials as `Jet2`s.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Number of independent variables carried by [`Jet2`].
pub const NVARS: usize = 4;

/// Minimal field-like interface shared by `f64` and the jet types.
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(v: f64) -> Self;
    /// The underlying real value (constant term).
    fn re(&self) -> f64;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }
    fn one() -> Self {
        Self::from_f64(1.0)
    }
    fn scale(self, k: f64) -> Self {
        self * Self::from_f64(k)
    }
}

impl Scalar for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn re(&self) -> f64 {
        *self
    }
}

/// Value, gradient and Hessian of a scalar function of four variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub value: f64,
    pub grad: [f64; NVARS],
    /// Symmetric; stored in full.
    pub hess: [[f64; NVARS]; NVARS],
}

impl Jet2 {
    pub fn constant(value: f64) -> Self {
        Self {
            value,
            grad: [0.0; NVARS],
            hess: [[0.0; NVARS]; NVARS],
        }
    }

    /// The coordinate function `x_index` evaluated at `value`.
    pub fn variable(value: f64, index: usize) -> Self {
        let mut j = Self::constant(value);
        j.grad[index] = 1.0;
        j
    }

    fn map_chain(self, f0: f64, f1: f64, f2: f64) -> Self {
        // h = f(self): h' = f1 g', h'' = f1 g'' + f2 g' g'^T
        let mut out = Self::constant(f0);
        for i in 0..NVARS {
            out.grad[i] = f1 * self.grad[i];
            for j in 0..NVARS {
                out.hess[i][j] = f1 * self.hess[i][j] + f2 * self.grad[i] * self.grad[j];
            }
        }
        out
    }

    pub fn recip(self) -> Self {
        let v = self.value;
        self.map_chain(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v))
    }

    pub fn sqrt(self) -> Self {
        let s = self.value.sqrt();
        self.map_chain(s, 0.5 / s, -0.25 / (s * s * s))
    }

    pub fn exp(self) -> Self {
        let e = self.value.exp();
        self.map_chain(e, e, e)
    }
}

impl Add for Jet2 {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.value += rhs.value;
        for i in 0..NVARS {
            self.grad[i] += rhs.grad[i];
            for j in 0..NVARS {
                self.hess[i][j] += rhs.hess[i][j];
            }
        }
        self
    }
}

impl Sub for Jet2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Jet2 {
    type Output = Self;
    fn neg(mut self) -> Self {
        self.value = -self.value;
        for i in 0..NVARS {
            self.grad[i] = -self.grad[i];
            for j in 0..NVARS {
                self.hess[i][j] = -self.hess[i][j];
            }
        }
        self
    }
}

impl Mul for Jet2 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::constant(self.value * rhs.value);
        for i in 0..NVARS {
            out.grad[i] = self.grad[i] * rhs.value + self.value * rhs.grad[i];
            for j in 0..NVARS {
                out.hess[i][j] = self.hess[i][j] * rhs.value
                    + self.value * rhs.hess[i][j]
                    + self.grad[i] * rhs.grad[j]
                    + rhs.grad[i] * self.grad[j];
            }
        }
        out
    }
}

impl Div for Jet2 {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

impl Scalar for Jet2 {
    fn from_f64(v: f64) -> Self {
        Self::constant(v)
    }
    fn re(&self) -> f64 {
        self.value
    }
}

/// First-order dual number in two directions over an arbitrary scalar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual<T> {
    pub value: T,
    pub d: [T; 2],
}

impl<T: Scalar> Dual<T> {
    pub fn constant(value: T) -> Self {
        Self {
            value,
            d: [T::zero(), T::zero()],
        }
    }

    pub fn variable(value: T, index: usize) -> Self {
        let mut out = Self::constant(value);
        out.d[index] = T::one();
        out
    }
}

impl<T: Scalar> Add for Dual<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            value: self.value + rhs.value,
            d: [self.d[0] + rhs.d[0], self.d[1] + rhs.d[1]],
        }
    }
}

impl<T: Scalar> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self {
            value: self.value - rhs.value,
            d: [self.d[0] - rhs.d[0], self.d[1] - rhs.d[1]],
        }
    }
}

impl<T: Scalar> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            value: -self.value,
            d: [-self.d[0], -self.d[1]],
        }
    }
}

impl<T: Scalar> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self {
            value: self.value * rhs.value,
            d: [
                self.d[0] * rhs.value + self.value * rhs.d[0],
                self.d[1] * rhs.value + self.value * rhs.d[1],
            ],
        }
    }
}

impl<T: Scalar> Div for Dual<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let inv = T::one() / rhs.value;
        let q = self.value * inv;
        Self {
            value: q,
            d: [
                (self.d[0] - q * rhs.d[0]) * inv,
                (self.d[1] - q * rhs.d[1]) * inv,
            ],
        }
    }
}

impl<T: Scalar> Scalar for Dual<T> {
    fn from_f64(v: f64) -> Self {
        Self::constant(T::from_f64(v))
    }
    fn re(&self) -> f64 {
        self.value.re()
    }
}
