//! Second-order jets over the 2n coordinates of TM, and a finite-difference oracle.

use crate::error::{GeomError, Result};
use crate::scalar::Scalar;
use crate::space::{SpaceDefinition, SpacePoint};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

/// Maximum number of variables a jet carries (2n with n ≤ 3).
pub const MAX_VARS: usize = 6;

/// Truncated second-order Taylor scalar: value, gradient and Hessian.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub nvars: usize,
    pub value: f64,
    pub grad: [f64; MAX_VARS],
    pub hess: [[f64; MAX_VARS]; MAX_VARS],
}

impl Jet {
    pub fn constant(v: f64) -> Self {
        Jet { nvars: 0, value: v, grad: [0.0; MAX_VARS], hess: [[0.0; MAX_VARS]; MAX_VARS] }
    }

    pub fn variable(v: f64, k: usize, nvars: usize) -> Self {
        let mut j = Jet::constant(v);
        j.nvars = nvars;
        j.grad[k] = 1.0;
        j
    }

    pub fn gradient(&self) -> &[f64] {
        &self.grad[..self.nvars]
    }

    pub fn hessian(&self) -> Vec<Vec<f64>> {
        (0..self.nvars).map(|i| self.hess[i][..self.nvars].to_vec()).collect()
    }

    /// Applies `f` with derivatives `d1 = f'(v)`, `d2 = f''(v)`.
    fn apply(self, f: f64, d1: f64, d2: f64) -> Self {
        let mut out = Jet::constant(f);
        out.nvars = self.nvars;
        for i in 0..MAX_VARS {
            out.grad[i] = d1 * self.grad[i];
            for j in 0..MAX_VARS {
                out.hess[i][j] = d1 * self.hess[i][j] + d2 * self.grad[i] * self.grad[j];
            }
        }
        out
    }

    fn recip(self) -> Self {
        let v = self.value;
        self.apply(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v))
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(mut self, o: Jet) -> Jet {
        self.nvars = self.nvars.max(o.nvars);
        self.value += o.value;
        for i in 0..MAX_VARS {
            self.grad[i] += o.grad[i];
            for j in 0..MAX_VARS {
                self.hess[i][j] += o.hess[i][j];
            }
        }
        self
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(mut self) -> Jet {
        self.value = -self.value;
        for i in 0..MAX_VARS {
            self.grad[i] = -self.grad[i];
            for j in 0..MAX_VARS {
                self.hess[i][j] = -self.hess[i][j];
            }
        }
        self
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        self + (-o)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let mut out = Jet::constant(self.value * o.value);
        out.nvars = self.nvars.max(o.nvars);
        for i in 0..MAX_VARS {
            out.grad[i] = self.value * o.grad[i] + o.value * self.grad[i];
            for j in 0..MAX_VARS {
                out.hess[i][j] = self.value * o.hess[i][j]
                    + o.value * self.hess[i][j]
                    + self.grad[i] * o.grad[j]
                    + o.grad[i] * self.grad[j];
            }
        }
        out
    }
}

impl Div for Jet {
    type Output = Jet;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Jet) -> Jet {
        self * o.recip()
    }
}

impl AddAssign for Jet {
    fn add_assign(&mut self, o: Jet) {
        *self = *self + o;
    }
}

impl SubAssign for Jet {
    fn sub_assign(&mut self, o: Jet) {
        *self = *self - o;
    }
}

impl Scalar for Jet {
    fn c(v: f64) -> Self {
        Jet::constant(v)
    }
    fn value(&self) -> f64 {
        self.value
    }
    fn sin(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.apply(s, c, -s)
    }
    fn cos(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.apply(c, -s, -c)
    }
    fn exp(self) -> Self {
        let e = self.value.exp();
        self.apply(e, e, e)
    }
    fn ln(self) -> Self {
        let v = self.value;
        self.apply(v.ln(), 1.0 / v, -1.0 / (v * v))
    }
    fn sqrt(self) -> Self {
        let r = self.value.sqrt();
        self.apply(r, 0.5 / r, -0.25 / (r * r * r))
    }
}

/// A scalar function of a point, generic over the scalar type.
pub trait ScalarEvaluator {
    fn eval<S: Scalar>(&self, p: &SpacePoint<S>) -> S;
}

impl<T: ScalarEvaluator + ?Sized> ScalarEvaluator for &T {
    fn eval<S: Scalar>(&self, p: &SpacePoint<S>) -> S {
        (**self).eval(p)
    }
}

/// Value, gradient (∂_μ then ∂̇_a) and Hessian of `f` at `p`.
pub fn jet_evaluate<F: ScalarEvaluator>(f: &F, p: &SpacePoint<f64>) -> Result<Jet> {
    let n = p.n();
    let nv = 2 * n;
    if nv > MAX_VARS {
        return Err(GeomError::InvalidArgument(format!("jets support n ≤ {}", MAX_VARS / 2)));
    }
    let q = SpacePoint {
        x: (0..n).map(|k| Jet::variable(p.x[k], k, nv)).collect(),
        y: (0..n).map(|a| Jet::variable(p.y[a], n + a, nv)).collect(),
    };
    let mut j = f.eval(&q);
    j.nvars = nv;
    let finite = j.value.is_finite()
        && j.gradient().iter().all(|v| v.is_finite())
        && j.hess.iter().flatten().all(|v| v.is_finite());
    if !finite {
        return Err(GeomError::EvaluationDomain(format!("non-finite jet at {p:?}")));
    }
    Ok(j)
}

/// Central difference `(f(p + h e_k) − f(p − h e_k)) / 2h`.
pub fn fd_partial<F: ScalarEvaluator>(f: &F, p: &SpacePoint<f64>, slot: usize, h: f64) -> f64 {
    (f.eval(&p.shifted(slot, h)) - f.eval(&p.shifted(slot, -h))) / (2.0 * h)
}

/// Nested central differences for ∂_k ∂_l f.
pub fn fd_second<F: ScalarEvaluator>(f: &F, p: &SpacePoint<f64>, k: usize, l: usize, h: f64) -> f64 {
    let g = |q: &SpacePoint<f64>| fd_partial(f, q, l, h);
    (g(&p.shifted(k, h)) - g(&p.shifted(k, -h))) / (2.0 * h)
}

/// Same as [`fd_partial`] but refuses to step outside the space's domain.
pub fn fd_partial_checked<F: ScalarEvaluator>(
    space: &SpaceDefinition,
    f: &F,
    p: &SpacePoint<f64>,
    slot: usize,
    h: f64,
) -> Result<f64> {
    if h <= 0.0 {
        return Err(GeomError::InvalidArgument("step must be positive".into()));
    }
    space.check_point(&p.shifted(slot, h))?;
    space.check_point(&p.shifted(slot, -h))?;
    Ok(fd_partial(f, p, slot, h))
}

/// Which λ or N component a [`Component`] evaluator reads.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    FrameH,
    FrameV,
    Nlc,
}

/// One entry of λ_i^α, λ_i^a or N^a_μ as a scalar field.
#[derive(Clone, Debug)]
pub struct Component<'a> {
    pub space: &'a SpaceDefinition,
    pub kind: ComponentKind,
    pub row: usize,
    pub col: usize,
}

impl<'a> Component<'a> {
    /// Every λ and N component of a space.
    pub fn all(space: &'a SpaceDefinition) -> Vec<Component<'a>> {
        let n = space.n;
        let mut out = Vec::new();
        for kind in [ComponentKind::FrameH, ComponentKind::FrameV, ComponentKind::Nlc] {
            for row in 0..n {
                for col in 0..n {
                    out.push(Component { space, kind, row, col });
                }
            }
        }
        out
    }
}

impl ScalarEvaluator for Component<'_> {
    fn eval<S: Scalar>(&self, p: &SpacePoint<S>) -> S {
        match self.kind {
            ComponentKind::FrameH => self.space.frame(p).lh[(self.row, self.col)],
            ComponentKind::FrameV => self.space.frame(p).lv[(self.row, self.col)],
            ComponentKind::Nlc => self.space.nlc(p)[(self.row, self.col)],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct XY;
    impl ScalarEvaluator for XY {
        // x¹·y² with 1-based labels: x[0]·y[1]
        fn eval<S: Scalar>(&self, p: &SpacePoint<S>) -> S {
            p.x[0] * p.y[1]
        }
    }

    struct Seven;
    impl ScalarEvaluator for Seven {
        fn eval<S: Scalar>(&self, _p: &SpacePoint<S>) -> S {
            S::c(7.0)
        }
    }

    #[test]
    fn polynomial_jet() {
        let p = SpacePoint::new(vec![3.0, -1.0], vec![0.4, 5.0]).unwrap();
        let j = jet_evaluate(&XY, &p).unwrap();
        assert_eq!(j.value, 15.0);
        assert_eq!(j.gradient(), &[5.0, 0.0, 0.0, 3.0]);
        for a in 0..4 {
            for b in 0..4 {
                let e = if (a, b) == (0, 3) || (a, b) == (3, 0) { 1.0 } else { 0.0 };
                assert_eq!(j.hess[a][b], e);
            }
        }
    }

    #[test]
    fn constant_jet() {
        let p = SpacePoint::new(vec![0.1, 0.2], vec![0.3, 0.4]).unwrap();
        let j = jet_evaluate(&Seven, &p).unwrap();
        assert_eq!(j.value, 7.0);
        assert!(j.gradient().iter().all(|v| *v == 0.0));
        assert!(j.hessian().iter().flatten().all(|v| *v == 0.0));
    }

    #[test]
    fn non_finite_is_an_error() {
        struct Log;
        impl ScalarEvaluator for Log {
            fn eval<S: Scalar>(&self, p: &SpacePoint<S>) -> S {
                p.x[0].ln()
            }
        }
        let p = SpacePoint::new(vec![-1.0, 0.0], vec![1.0, 0.0]).unwrap();
        assert!(matches!(jet_evaluate(&Log, &p), Err(GeomError::EvaluationDomain(_))));
    }

    #[test]
    fn fd_square() {
        struct Sq;
        impl ScalarEvaluator for Sq {
            fn eval<S: Scalar>(&self, p: &SpacePoint<S>) -> S {
                p.x[0] * p.x[0]
            }
        }
        let p = SpacePoint::new(vec![2.0], vec![1.0]).unwrap();
        assert!((fd_partial(&Sq, &p, 0, 1e-5) - 4.0).abs() < 1e-9);
    }
}
