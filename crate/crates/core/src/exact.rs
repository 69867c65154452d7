//! Double-double arithmetic for residuals that cancel to second order.
//!
//! A value is the unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`; sums and
//! products are built from the error-free transforms `two_sum` and
//! `two_prod` (the latter via fused multiply-add).

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleF64 {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleF64 {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };

    pub fn from_f64(v: f64) -> Self {
        Self { hi: v, lo: 0.0 }
    }

    /// Exact product of two doubles.
    pub fn product(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Self { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl Add for DoubleF64 {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (hi, lo) = quick_two_sum(s, e + self.lo + o.lo);
        Self { hi, lo }
    }
}

impl Neg for DoubleF64 {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DoubleF64 {
    type Output = Self;

    fn sub(self, o: Self) -> Self {
        self + -o
    }
}

impl Mul for DoubleF64 {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        let (hi, lo) = quick_two_sum(p, e + self.hi * o.lo + self.lo * o.hi);
        Self { hi, lo }
    }
}

impl Mul<f64> for DoubleF64 {
    type Output = Self;

    fn mul(self, v: f64) -> Self {
        self * Self::from_f64(v)
    }
}

/// `Σ aᵢ bᵢ` with double-double accumulation.
pub fn dot(a: &[f64], b: &[f64]) -> DoubleF64 {
    a.iter()
        .zip(b)
        .fold(DoubleF64::ZERO, |acc, (&x, &y)| acc + DoubleF64::product(x, y))
}

/// `ab − cd` for double-double factors.
pub fn product_difference(a: DoubleF64, b: DoubleF64, c: DoubleF64, d: DoubleF64) -> f64 {
    (a * b - c * d).to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_bits() {
        let a = 1.0 + f64::EPSILON;
        // (1 + ε)² − 1 − 2ε = ε², invisible in plain f64
        let sq = DoubleF64::product(a, a);
        let r = sq - DoubleF64::from_f64(1.0) - DoubleF64::from_f64(2.0 * f64::EPSILON);
        assert_eq!(r.to_f64(), f64::EPSILON * f64::EPSILON);
        assert_eq!(a * a - 1.0 - 2.0 * f64::EPSILON, 0.0);
    }

    #[test]
    fn dot_is_exact_on_cancelling_input() {
        let d = dot(&[1e16, 1.0, -1e16], &[1.0, 1.0, 1.0]);
        assert_eq!(d.to_f64(), 1.0);
    }
}
