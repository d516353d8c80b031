//! Scalar abstraction shared by plain reals, forward duals and jets.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

pub trait Scalar:
    Copy
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
{
    fn c(v: f64) -> Self;
    /// Real part.
    fn value(&self) -> f64;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;

    fn zero() -> Self {
        Self::c(0.0)
    }
    fn one() -> Self {
        Self::c(1.0)
    }
    fn scale(self, k: f64) -> Self {
        self * Self::c(k)
    }
    fn powi(self, n: i32) -> Self {
        let mut acc = Self::one();
        let base = if n < 0 { Self::one() / self } else { self };
        for _ in 0..n.unsigned_abs() {
            acc = acc * base;
        }
        acc
    }
}

impl Scalar for f64 {
    fn c(v: f64) -> Self {
        v
    }
    fn value(&self) -> f64 {
        *self
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
}

/// Forward-mode dual number `re + du·ε`, ε² = 0. Nests: `Dual<Dual<f64>>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual<S> {
    pub re: S,
    pub du: S,
}

impl<S: Scalar> Dual<S> {
    pub fn new(re: S, du: S) -> Self {
        Dual { re, du }
    }
    pub fn constant(re: S) -> Self {
        Dual { re, du: S::zero() }
    }
    pub fn variable(re: S) -> Self {
        Dual { re, du: S::one() }
    }
    fn chain(self, f: S, df: S) -> Self {
        Dual { re: f, du: df * self.du }
    }
}

impl<S: Scalar> Add for Dual<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual { re: self.re + o.re, du: self.du + o.du }
    }
}

impl<S: Scalar> Sub for Dual<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual { re: self.re - o.re, du: self.du - o.du }
    }
}

impl<S: Scalar> Mul for Dual<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Dual { re: self.re * o.re, du: self.re * o.du + self.du * o.re }
    }
}

impl<S: Scalar> Div for Dual<S> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let inv = S::one() / o.re;
        let re = self.re * inv;
        Dual { re, du: (self.du - re * o.du) * inv }
    }
}

impl<S: Scalar> Neg for Dual<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual { re: -self.re, du: -self.du }
    }
}

impl<S: Scalar> AddAssign for Dual<S> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<S: Scalar> SubAssign for Dual<S> {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<S: Scalar> Scalar for Dual<S> {
    fn c(v: f64) -> Self {
        Dual::constant(S::c(v))
    }
    fn value(&self) -> f64 {
        self.re.value()
    }
    fn sin(self) -> Self {
        self.chain(self.re.sin(), self.re.cos())
    }
    fn cos(self) -> Self {
        self.chain(self.re.cos(), -self.re.sin())
    }
    fn exp(self) -> Self {
        let e = self.re.exp();
        self.chain(e, e)
    }
    fn ln(self) -> Self {
        self.chain(self.re.ln(), S::one() / self.re)
    }
    fn sqrt(self) -> Self {
        let r = self.re.sqrt();
        self.chain(r, S::c(0.5) / r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_product_rule() {
        let x = Dual::variable(3.0);
        let f = x * x * x;
        assert_eq!(f.re, 27.0);
        assert_eq!(f.du, 27.0);
    }

    #[test]
    fn nested_dual_second_derivative() {
        // d²/dx² sin(x) = -sin(x)
        let x0 = 0.4_f64;
        let x = Dual::new(Dual::new(x0, 1.0), Dual::new(1.0, 0.0));
        let f = x.sin();
        assert!((f.du.du + x0.sin()).abs() < 1e-15);
        assert!((f.re.du - x0.cos()).abs() < 1e-15);
    }

    #[test]
    fn quotient_and_sqrt() {
        let x = Dual::variable(2.0);
        let f = Dual::c(1.0) / x;
        assert!((f.du + 0.25).abs() < 1e-15);
        let g = x.sqrt();
        assert!((g.du - 0.5 / 2f64.sqrt()).abs() < 1e-15);
        let h = x.ln();
        assert!((h.du - 0.5).abs() < 1e-15);
    }

    #[test]
    fn powi_negative() {
        assert!((2.0_f64.powi(-2) - 0.25).abs() < 1e-15);
        let x = Dual::variable(2.0);
        let f = x.powi(-2);
        assert!((f.du + 0.25).abs() < 1e-15);
    }
}
