//! Small dense square matrices over any `Scalar`.

use crate::scalar::Scalar;
use std::ops::{Index, IndexMut};

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<S> {
    pub n: usize,
    pub data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(n: usize) -> Self {
        Mat { n, data: vec![S::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Mat { n, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        Self::from_fn(n, |i, j| S::c(rows[i][j]))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, o: &Self) -> Self {
        let n = self.n;
        Self::from_fn(n, |i, j| {
            let mut s = S::zero();
            for k in 0..n {
                s += self[(i, k)] * o[(k, j)];
            }
            s
        })
    }

    pub fn map<T>(&self, f: impl Fn(S) -> T) -> Mat<T> {
        Mat { n: self.n, data: self.data.iter().map(|&v| f(v)).collect() }
    }

    pub fn values(&self) -> Mat<f64> {
        self.map(|v| v.value())
    }

    pub fn scaled(&self, k: S) -> Self {
        self.map(|v| v * k)
    }

    pub fn det(&self) -> S {
        let n = self.n;
        let mut a = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let piv = pivot_row(&a, col);
            if a[(piv, col)].value() == 0.0 {
                return S::zero();
            }
            if piv != col {
                swap_rows(&mut a, piv, col);
                det = -det;
            }
            let p = a[(col, col)];
            det = det * p;
            for r in col + 1..n {
                let f = a[(r, col)] / p;
                for c in col..n {
                    let v = a[(col, c)];
                    a[(r, c)] -= f * v;
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse with partial pivoting on the real part.
    /// Returns `None` when a pivot's real part is exactly zero.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let piv = pivot_row(&a, col);
            if a[(piv, col)].value() == 0.0 {
                return None;
            }
            swap_rows(&mut a, piv, col);
            swap_rows(&mut inv, piv, col);
            let p = S::one() / a[(col, col)];
            for c in 0..n {
                a[(col, c)] = a[(col, c)] * p;
                inv[(col, c)] = inv[(col, c)] * p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)];
                for c in 0..n {
                    let (ac, ic) = (a[(col, c)], inv[(col, c)]);
                    a[(r, c)] -= f * ac;
                    inv[(r, c)] -= f * ic;
                }
            }
        }
        Some(inv)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.value().abs()))
    }

    pub fn max_diff(&self, o: &Self) -> f64 {
        self.data.iter().zip(&o.data).fold(0.0, |m, (a, b)| m.max((a.value() - b.value()).abs()))
    }
}

fn pivot_row<S: Scalar>(a: &Mat<S>, col: usize) -> usize {
    let mut best = col;
    for r in col + 1..a.n {
        if a[(r, col)].value().abs() > a[(best, col)].value().abs() {
            best = r;
        }
    }
    best
}

fn swap_rows<S: Scalar>(a: &mut Mat<S>, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..a.n {
        a.data.swap(i * a.n + c, j * a.n + c);
    }
}

impl<S> Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.n + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.n + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Dual;

    #[test]
    fn inverse_of_3x3() {
        let m: Mat<f64> = Mat::from_rows(&[
            vec![0.0, 2.0, 1.0],
            vec![1.0, 1.0, 0.0],
            vec![3.0, 0.0, 1.0],
        ]);
        let inv = m.inverse().unwrap();
        let p = m.matmul(&inv);
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((p[(i, j)] - e).abs() < 1e-14);
            }
        }
        assert!((m.det() - (-5.0)).abs() < 1e-14);
    }

    #[test]
    fn singular_has_no_inverse() {
        let m: Mat<f64> = Mat::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(m.det().abs() < 1e-15);
    }

    #[test]
    fn inverse_differentiates() {
        // d/dt (A + tB)^{-1} = -A^{-1} B A^{-1}
        let a: Mat<f64> = Mat::from_rows(&[vec![2.0, 0.5], vec![0.3, 1.5]]);
        let b: Mat<f64> = Mat::from_rows(&[vec![0.1, -0.2], vec![0.4, 0.7]]);
        let m = Mat::from_fn(2, |i, j| Dual::new(a[(i, j)], b[(i, j)]));
        let inv = m.inverse().unwrap();
        let ai = a.inverse().unwrap();
        let expect = ai.matmul(&b).matmul(&ai);
        for i in 0..2 {
            for j in 0..2 {
                assert!((inv[(i, j)].du + expect[(i, j)]).abs() < 1e-14);
            }
        }
    }
}
