//! Adapted derivatives δ_μ, ∂̇_a, the nonlinear-connection curvature and the
//! generic h-/v-covariant derivative of d-tensor fields.

use crate::connections::{ConnKind, ConnectionCoefficients};
use crate::error::{GeomError, Result};
use crate::jet::ScalarEvaluator;
use crate::linalg::Mat;
use crate::scalar::{Dual, Scalar};
use crate::space::{coframe_of, CoFramePair, FramePair, SpaceDefinition, SpacePoint};
use crate::tensor::{Slot, SlotKind, TensorBlock, Variance, HL, VL, VU};

/// Frame, coframe and N at a point together with all 2n plain partials.
#[derive(Clone, Debug)]
pub struct FrameJet<S> {
    pub n: usize,
    pub frame: FramePair<S>,
    pub coframe: CoFramePair<S>,
    pub nl: Mat<S>,
    pub d_lh: Vec<Mat<S>>,
    pub d_lv: Vec<Mat<S>>,
    pub d_ch: Vec<Mat<S>>,
    pub d_cv: Vec<Mat<S>>,
    pub d_nl: Vec<Mat<S>>,
}

fn split<S: Scalar>(m: &Mat<Dual<S>>) -> (Mat<S>, Mat<S>) {
    (m.map(|v| v.re), m.map(|v| v.du))
}

impl<S: Scalar> FrameJet<S> {
    pub fn new(space: &SpaceDefinition, p: &SpacePoint<S>) -> Self {
        let n = space.n;
        let mut fj: Option<FrameJet<S>> = None;
        let mut parts: [Vec<Mat<S>>; 5] = Default::default();
        for k in 0..2 * n {
            let q = p.seed(k);
            let f = space.frame(&q);
            let cf = coframe_of(&f);
            let nl = space.nlc(&q);
            let (lh, dlh) = split(&f.lh);
            let (lv, dlv) = split(&f.lv);
            let (ch, dch) = split(&cf.ch);
            let (cv, dcv) = split(&cf.cv);
            let (nl0, dnl) = split(&nl);
            if fj.is_none() {
                fj = Some(FrameJet {
                    n,
                    frame: FramePair { lh, lv },
                    coframe: CoFramePair { ch, cv },
                    nl: nl0,
                    d_lh: vec![],
                    d_lv: vec![],
                    d_ch: vec![],
                    d_cv: vec![],
                    d_nl: vec![],
                });
            }
            for (slot, d) in parts.iter_mut().zip([dlh, dlv, dch, dcv, dnl]) {
                slot.push(d);
            }
        }
        let mut fj = fj.expect("n ≥ 1");
        let [a, b, c, d, e] = parts;
        fj.d_lh = a;
        fj.d_lv = b;
        fj.d_ch = c;
        fj.d_cv = d;
        fj.d_nl = e;
        fj
    }

    /// Largest first-order frame or N datum; zero on flat spaces.
    pub fn activity(&self) -> f64 {
        [&self.d_lh, &self.d_lv, &self.d_nl]
            .iter()
            .flat_map(|v| v.iter().map(|m| m.max_abs()))
            .fold(self.nl.max_abs(), f64::max)
    }

    /// δ_μ of a matrix field given its plain partials.
    pub fn delta(&self, d: &[Mat<S>], mu: usize) -> Mat<S> {
        let n = self.n;
        let mut out = d[mu].clone();
        for a in 0..n {
            let na = self.nl[(a, mu)];
            for k in 0..n * n {
                out.data[k] -= na * d[n + a].data[k];
            }
        }
        out
    }

    /// ∂̇_c of a matrix field.
    pub fn dot<'a>(&self, d: &'a [Mat<S>], c: usize) -> &'a Mat<S> {
        &d[self.n + c]
    }

    /// ∂̇_b N^a_μ as `[a][b][μ]`.
    pub fn dot_nlc(&self) -> TensorBlock<S> {
        TensorBlock::from_fn(self.n, &[VU, VL, HL], |i| self.d_nl[self.n + i[1]][(i[0], i[2])])
    }

    /// R^a_{μν} = δ_ν N^a_μ − δ_μ N^a_ν.
    pub fn nlc_curvature(&self) -> TensorBlock<S> {
        let dn: Vec<Mat<S>> = (0..self.n).map(|m| self.delta(&self.d_nl, m)).collect();
        TensorBlock::from_fn(self.n, &[VU, HL, HL], |i| {
            let (a, m, v) = (i[0], i[1], i[2]);
            dn[v][(a, m)] - dn[m][(a, v)]
        })
    }
}

/// The δ_μ direction at `p` as a dual point.
pub fn delta_point<S: Scalar>(space: &SpaceDefinition, p: &SpacePoint<S>, mu: usize) -> SpacePoint<Dual<S>> {
    let nl = space.nlc(p);
    delta_point_with(p, &nl, mu)
}

fn delta_point_with<S: Scalar>(p: &SpacePoint<S>, nl: &Mat<S>, mu: usize) -> SpacePoint<Dual<S>> {
    let n = p.n();
    let dx: Vec<S> = (0..n).map(|k| if k == mu { S::one() } else { S::zero() }).collect();
    let dy: Vec<S> = (0..n).map(|a| -nl[(a, mu)]).collect();
    p.along(&dx, &dy)
}

/// δ_μ f = ∂_μ f − N^a_μ ∂̇_a f at `p`.
pub fn delta_derivative<F: ScalarEvaluator>(
    f: &F,
    space: &SpaceDefinition,
    p: &SpacePoint<f64>,
    mu: usize,
) -> Result<f64> {
    space.check_point(p)?;
    if mu >= space.n {
        return Err(GeomError::InvalidArgument(format!("index {mu} out of range")));
    }
    Ok(f.eval(&delta_point(space, p, mu)).du)
}

/// R^a_{μν} evaluated by differentiating N along δ_μ directly.
pub fn nlc_curvature_at<S: Scalar>(space: &SpaceDefinition, p: &SpacePoint<S>) -> TensorBlock<S> {
    let n = space.n;
    let nl = space.nlc(p);
    let dn: Vec<Mat<S>> =
        (0..n).map(|m| space.nlc(&delta_point_with(p, &nl, m)).map(|v| v.du)).collect();
    TensorBlock::from_fn(n, &[VU, HL, HL], |i| dn[i[2]][(i[0], i[1])] - dn[i[1]][(i[0], i[2])])
}

pub fn nlc_curvature(space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<TensorBlock<f64>> {
    space.check_point(p)?;
    Ok(nlc_curvature_at(space, p))
}

/// A d-tensor field: fixed signature, pointwise evaluator generic over the scalar.
pub trait TensorField {
    fn signature(&self, n: usize) -> Vec<Slot>;
    fn eval<S: Scalar>(&self, space: &SpaceDefinition, p: &SpacePoint<S>) -> TensorBlock<S>;
}

impl<T: TensorField + ?Sized> TensorField for &T {
    fn signature(&self, n: usize) -> Vec<Slot> {
        (**self).signature(n)
    }
    fn eval<S: Scalar>(&self, space: &SpaceDefinition, p: &SpacePoint<S>) -> TensorBlock<S> {
        (**self).eval(space, p)
    }
}

/// Plain adapted partials δ_μ T (h = true) or ∂̇_c T (h = false), plus T itself.
pub fn adapted_partials<F: TensorField, S: Scalar>(
    field: &F,
    space: &SpaceDefinition,
    p: &SpacePoint<S>,
    horizontal: bool,
) -> (TensorBlock<S>, Vec<TensorBlock<S>>) {
    let n = space.n;
    let nl = if horizontal { Some(space.nlc(p)) } else { None };
    let mut base = None;
    let mut ds = Vec::with_capacity(n);
    for k in 0..n {
        let q = match &nl {
            Some(nl) => delta_point_with(p, nl, k),
            None => p.seed(n + k),
        };
        let blk = field.eval(space, &q);
        if base.is_none() {
            base = Some(blk.map(|v| v.re));
        }
        ds.push(blk.map(|v| v.du));
    }
    let base = base.unwrap_or_else(|| field.eval(space, p));
    (base, ds)
}

/// Connection terms of Eqs. for |μ (horizontal) or ||c (vertical) added to plain partials.
pub fn covariant_kernel<S: Scalar>(
    base: &TensorBlock<S>,
    partials: &[TensorBlock<S>],
    d: &ConnectionCoefficients<S>,
    horizontal: bool,
) -> TensorBlock<S> {
    let n = base.n;
    let r = base.rank();
    let mut sig = base.sig.clone();
    sig.push(if horizontal { HL } else { VL });
    let coef = |kind: SlotKind| -> &TensorBlock<S> {
        match (horizontal, kind) {
            (true, SlotKind::H) => &d.gh,
            (true, SlotKind::V) => &d.gv,
            (false, SlotKind::H) => &d.ch,
            (false, SlotKind::V) => &d.cv,
        }
    };
    TensorBlock::from_fn(n, &sig, |idx| {
        let m = idx[r];
        let body = &idx[..r];
        let mut v = partials[m].get(body);
        let mut j = body.to_vec();
        for (s, slot) in base.sig.iter().enumerate() {
            let Slot::Tensor(kind, var) = *slot else { continue };
            let c = coef(kind);
            for e in 0..n {
                j[s] = e;
                let t = base.get(&j);
                match var {
                    Variance::Upper => v += t * c[[body[s], e, m]],
                    Variance::Lower => v -= t * c[[e, body[s], m]],
                }
            }
            j[s] = body[s];
        }
        v
    })
}

/// T_{…|μ}: horizontal covariant derivative under `conn`, index appended last.
#[derive(Clone, Debug)]
pub struct HCov<F> {
    pub inner: F,
    pub conn: ConnKind,
}

/// T_{…||c}: vertical covariant derivative under `conn`, index appended last.
#[derive(Clone, Debug)]
pub struct VCov<F> {
    pub inner: F,
    pub conn: ConnKind,
}

pub fn hcov<F: TensorField>(inner: F, conn: ConnKind) -> HCov<F> {
    HCov { inner, conn }
}

pub fn vcov<F: TensorField>(inner: F, conn: ConnKind) -> VCov<F> {
    VCov { inner, conn }
}

impl<F: TensorField> TensorField for HCov<F> {
    fn signature(&self, n: usize) -> Vec<Slot> {
        let mut s = self.inner.signature(n);
        s.push(HL);
        s
    }
    fn eval<S: Scalar>(&self, space: &SpaceDefinition, p: &SpacePoint<S>) -> TensorBlock<S> {
        let d = self.conn.coefficients(space, p);
        let (base, ds) = adapted_partials(&self.inner, space, p, true);
        covariant_kernel(&base, &ds, &d, true)
    }
}

impl<F: TensorField> TensorField for VCov<F> {
    fn signature(&self, n: usize) -> Vec<Slot> {
        let mut s = self.inner.signature(n);
        s.push(VL);
        s
    }
    fn eval<S: Scalar>(&self, space: &SpaceDefinition, p: &SpacePoint<S>) -> TensorBlock<S> {
        let d = self.conn.coefficients(space, p);
        let (base, ds) = adapted_partials(&self.inner, space, p, false);
        covariant_kernel(&base, &ds, &d, false)
    }
}

/// Checked f64 entry point for the h-covariant derivative.
pub fn h_covariant_derivative<F: TensorField>(
    field: &F,
    conn: ConnKind,
    space: &SpaceDefinition,
    p: &SpacePoint<f64>,
) -> Result<TensorBlock<f64>> {
    space.check_point(p)?;
    Ok(hcov(field, conn).eval(space, p))
}

pub fn v_covariant_derivative<F: TensorField>(
    field: &F,
    conn: ConnKind,
    space: &SpaceDefinition,
    p: &SpacePoint<f64>,
) -> Result<TensorBlock<f64>> {
    space.check_point(p)?;
    Ok(vcov(field, conn).eval(space, p))
}

/// Scalar field wrapper: empty signature.
pub struct ScalarField<F>(pub F);

impl<F: ScalarEvaluator> TensorField for ScalarField<F> {
    fn signature(&self, _n: usize) -> Vec<Slot> {
        vec![]
    }
    fn eval<S: Scalar>(&self, space: &SpaceDefinition, p: &SpacePoint<S>) -> TensorBlock<S> {
        let mut t = TensorBlock::zeros(space.n, &[]);
        t.data[0] = self.0.eval(p);
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::builtin_space;

    struct Y1;
    impl ScalarEvaluator for Y1 {
        fn eval<S: Scalar>(&self, p: &SpacePoint<S>) -> S {
            p.y[1]
        }
    }

    #[test]
    fn delta_of_y_is_minus_n() {
        let s = builtin_space("generic2").unwrap();
        let p = SpacePoint::new(vec![0.3, -0.2], vec![0.7, 0.9]).unwrap();
        let nl = s.nlc(&p);
        for mu in 0..2 {
            let d = delta_derivative(&Y1, &s, &p, mu).unwrap();
            assert!((d + nl[(1, mu)]).abs() < 1e-15);
        }
    }

    #[test]
    fn two_routes_to_nlc_curvature() {
        let s = builtin_space("generic2").unwrap();
        let p = SpacePoint::new(vec![0.3, -0.2], vec![0.7, 0.9]).unwrap();
        let a = nlc_curvature(&s, &p).unwrap();
        let b = FrameJet::new(&s, &p).nlc_curvature();
        assert!(a.max_diff(&b) < 1e-14);
        assert!(a.max_abs() > 1e-3);
    }
}
