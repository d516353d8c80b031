//! Dense d-tensor component blocks with horizontal/vertical slot tags.

use crate::scalar::Scalar;
use serde::Serialize;
use std::ops::{Index, IndexMut};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SlotKind {
    H,
    V,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Variance {
    Upper,
    Lower,
}

/// One index slot. `Mesh` labels the λ-field number i and carries no connection term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Slot {
    Mesh,
    Tensor(SlotKind, Variance),
}

pub const HU: Slot = Slot::Tensor(SlotKind::H, Variance::Upper);
pub const HL: Slot = Slot::Tensor(SlotKind::H, Variance::Lower);
pub const VU: Slot = Slot::Tensor(SlotKind::V, Variance::Upper);
pub const VL: Slot = Slot::Tensor(SlotKind::V, Variance::Lower);
pub const MESH: Slot = Slot::Mesh;

impl Slot {
    pub fn label(&self) -> &'static str {
        match self {
            Slot::Mesh => "i",
            Slot::Tensor(SlotKind::H, Variance::Upper) => "H^",
            Slot::Tensor(SlotKind::H, Variance::Lower) => "H_",
            Slot::Tensor(SlotKind::V, Variance::Upper) => "V^",
            Slot::Tensor(SlotKind::V, Variance::Lower) => "V_",
        }
    }
}

/// Row-major `n^k` array over a slot signature.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorBlock<S> {
    pub n: usize,
    pub sig: Vec<Slot>,
    pub data: Vec<S>,
}

impl<S: Scalar> TensorBlock<S> {
    pub fn zeros(n: usize, sig: &[Slot]) -> Self {
        TensorBlock { n, sig: sig.to_vec(), data: vec![S::zero(); n.pow(sig.len() as u32)] }
    }

    pub fn from_fn(n: usize, sig: &[Slot], f: impl Fn(&[usize]) -> S) -> Self {
        let mut t = Self::zeros(n, sig);
        let mut idx = vec![0; sig.len()];
        for k in 0..t.data.len() {
            t.unravel(k, &mut idx);
            t.data[k] = f(&idx);
        }
        t
    }

    pub fn rank(&self) -> usize {
        self.sig.len()
    }

    pub fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.sig.len());
        idx.iter().fold(0, |acc, &i| acc * self.n + i)
    }

    pub fn unravel(&self, mut k: usize, idx: &mut [usize]) {
        for s in (0..idx.len()).rev() {
            idx[s] = k % self.n;
            k /= self.n;
        }
    }

    pub fn get(&self, idx: &[usize]) -> S {
        self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: S) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(S) -> T) -> TensorBlock<T> {
        TensorBlock { n: self.n, sig: self.sig.clone(), data: self.data.iter().map(|&v| f(v)).collect() }
    }

    pub fn values(&self) -> TensorBlock<f64> {
        self.map(|v| v.value())
    }

    pub fn scaled(&self, k: f64) -> Self {
        self.map(|v| v.scale(k))
    }

    pub fn zip(&self, o: &Self, f: impl Fn(S, S) -> S) -> Self {
        assert_eq!(self.data.len(), o.data.len(), "block extents differ");
        TensorBlock {
            n: self.n,
            sig: self.sig.clone(),
            data: self.data.iter().zip(&o.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a - b)
    }

    /// Reorders axes: output axis `k` is input axis `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let sig: Vec<Slot> = perm.iter().map(|&p| self.sig[p]).collect();
        TensorBlock::from_fn(self.n, &sig, |idx| {
            let mut src = vec![0; perm.len()];
            for (k, &p) in perm.iter().enumerate() {
                src[p] = idx[k];
            }
            self.get(&src)
        })
    }

    /// Swaps the last two axes.
    pub fn swap_last(&self) -> Self {
        let r = self.rank();
        let mut perm: Vec<usize> = (0..r).collect();
        perm.swap(r - 2, r - 1);
        self.permuted(&perm)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.value().abs()))
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v.value() * v.value()).sum::<f64>().sqrt()
    }
}

impl TensorBlock<f64> {
    pub fn max_diff(&self, o: &Self) -> f64 {
        self.data.iter().zip(&o.data).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

impl<S, const K: usize> Index<[usize; K]> for TensorBlock<S> {
    type Output = S;
    fn index(&self, idx: [usize; K]) -> &S {
        debug_assert_eq!(K, self.sig.len());
        let o = idx.iter().fold(0, |acc, &i| acc * self.n + i);
        &self.data[o]
    }
}

impl<S, const K: usize> IndexMut<[usize; K]> for TensorBlock<S> {
    fn index_mut(&mut self, idx: [usize; K]) -> &mut S {
        debug_assert_eq!(K, self.sig.len());
        let o = idx.iter().fold(0, |acc, &i| acc * self.n + i);
        &mut self.data[o]
    }
}

/// 𝔖: f(a, b, c) + f(b, c, a) + f(c, a, b).
pub fn cyclic<S: Scalar>(a: usize, b: usize, c: usize, f: impl Fn(usize, usize, usize) -> S) -> S {
    f(a, b, c) + f(b, c, a) + f(c, a, b)
}

/// Max |a − b| over same-shaped blocks; the larger magnitude is returned second.
pub fn diff_and_scale(a: &TensorBlock<f64>, b: &TensorBlock<f64>) -> (f64, f64) {
    (a.max_diff(b), a.max_abs().max(b.max_abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_is_row_major() {
        let t = TensorBlock::<f64>::from_fn(2, &[HU, HL, HL], |i| (i[0] * 100 + i[1] * 10 + i[2]) as f64);
        assert_eq!(t[[1, 0, 1]], 101.0);
        assert_eq!(t.data[5], 101.0);
        let s = t.swap_last();
        assert_eq!(s[[1, 1, 0]], 101.0);
        let p = t.permuted(&[2, 0, 1]);
        assert_eq!(p[[1, 1, 0]], 101.0);
    }

    #[test]
    fn cyclic_sum() {
        let v = cyclic(1, 2, 3, |a, b, c| (a * 100 + b * 10 + c) as f64);
        assert_eq!(v, 123.0 + 231.0 + 312.0);
    }
}
