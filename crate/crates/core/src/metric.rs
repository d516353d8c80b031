//! hv-metric from the frame, the natural metric d-connection, metricity residuals.

use crate::calculus::{hcov, vcov, FrameJet, TensorField};
use crate::connections::{ConnKind, ConnectionCoefficients};
use crate::error::{GeomError, Result};
use crate::fields::Quantity;
use crate::linalg::Mat;
use crate::scalar::Scalar;
use crate::space::{kronecker_residual, CoFramePair, FramePair, SpaceDefinition, SpacePoint};
use crate::tensor::{TensorBlock, HL, HU, VL, VU};

/// g_{αβ}, g_{ab} and their inverses.
#[derive(Clone, Debug, PartialEq)]
pub struct HvMetric<S> {
    pub gh: Mat<S>,
    pub gv: Mat<S>,
    pub gh_inv: Mat<S>,
    pub gv_inv: Mat<S>,
}

fn gram<S: Scalar>(c: &Mat<S>) -> Mat<S> {
    c.transpose().matmul(c)
}

/// Unchecked: g = Cᵀ C, g⁻¹ = Lᵀ L.
pub fn metric_of<S: Scalar>(cf: &CoFramePair<S>, f: &FramePair<S>) -> HvMetric<S> {
    HvMetric { gh: gram(&cf.ch), gv: gram(&cf.cv), gh_inv: gram(&f.lh), gv_inv: gram(&f.lv) }
}

pub const KRONECKER_TOL: f64 = 1e-10;

pub fn metric_from_frame(cf: &CoFramePair<f64>, f: &FramePair<f64>) -> Result<HvMetric<f64>> {
    if cf.ch.n != f.lh.n || cf.cv.n != f.lv.n {
        return Err(GeomError::DimensionMismatch { expected: f.lh.n, got: cf.ch.n });
    }
    let r = kronecker_residual(f, cf);
    if !(r < KRONECKER_TOL) {
        return Err(GeomError::InconsistentFrame { residual: r });
    }
    Ok(metric_of(cf, f))
}

pub fn metric(space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<HvMetric<f64>> {
    space.check_point(p)?;
    let f = space.frame(p);
    let cf = crate::space::invert_frame(&f)?;
    metric_from_frame(&cf, &f)
}

/// Plain partials of g = CᵀC in all 2n slots.
fn gram_partials<S: Scalar>(c: &Mat<S>, dc: &[Mat<S>]) -> Vec<Mat<S>> {
    dc.iter()
        .map(|d| {
            let a = d.transpose().matmul(c);
            let b = c.transpose().matmul(d);
            Mat::from_fn(c.n, |i, j| a[(i, j)] + b[(i, j)])
        })
        .collect()
}

/// Closed Christoffel-type formulas for Γ̊, C̊.
pub fn natural_from_jet<S: Scalar>(fj: &FrameJet<S>) -> ConnectionCoefficients<S> {
    let n = fj.n;
    let g = metric_of(&fj.coframe, &fj.frame);
    let dgh = gram_partials(&fj.coframe.ch, &fj.d_ch);
    let dgv = gram_partials(&fj.coframe.cv, &fj.d_cv);
    let del_gh: Vec<Mat<S>> = (0..n).map(|m| fj.delta(&dgh, m)).collect();
    let del_gv: Vec<Mat<S>> = (0..n).map(|m| fj.delta(&dgv, m)).collect();
    let dn = fj.dot_nlc();
    let half = |v: S| v.scale(0.5);

    let gh = TensorBlock::from_fn(n, &[HU, HL, HL], |i| {
        let (a, m, v) = (i[0], i[1], i[2]);
        let mut s = S::zero();
        for e in 0..n {
            s += g.gh_inv[(a, e)] * (del_gh[m][(e, v)] + del_gh[v][(e, m)] - del_gh[e][(m, v)]);
        }
        half(s)
    });
    let gv = TensorBlock::from_fn(n, &[VU, VL, HL], |i| {
        let (a, b, v) = (i[0], i[1], i[2]);
        let mut s = S::zero();
        for c in 0..n {
            let mut t = del_gv[v][(b, c)];
            for d in 0..n {
                t -= g.gv[(d, c)] * dn[[d, b, v]] + g.gv[(b, d)] * dn[[d, c, v]];
            }
            s += g.gv_inv[(a, c)] * t;
        }
        dn[[a, b, v]] + half(s)
    });
    let ch = TensorBlock::from_fn(n, &[HU, HL, VL], |i| {
        let (a, m, c) = (i[0], i[1], i[2]);
        let mut s = S::zero();
        for e in 0..n {
            s += g.gh_inv[(a, e)] * dgh[n + c][(m, e)];
        }
        half(s)
    });
    let cv = TensorBlock::from_fn(n, &[VU, VL, VL], |i| {
        let (a, b, c) = (i[0], i[1], i[2]);
        let mut s = S::zero();
        for d in 0..n {
            s += g.gv_inv[(a, d)] * (dgv[n + b][(d, c)] + dgv[n + c][(d, b)] - dgv[n + d][(b, c)]);
        }
        half(s)
    });
    ConnectionCoefficients { gh, gv, ch, cv }
}

pub fn natural_connection(space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<ConnectionCoefficients<f64>> {
    let g = metric(space, p).map_err(|e| match e {
        GeomError::SingularFrame { .. } => GeomError::SingularMetric,
        e => e,
    })?;
    if g.gh.det().abs() < crate::space::SINGULAR_DET || g.gv.det().abs() < crate::space::SINGULAR_DET {
        return Err(GeomError::SingularMetric);
    }
    Ok(ConnKind::Natural.coefficients(space, p))
}

pub use crate::connections::natural_connection_via_lambda;

/// max |g_{αβ|μ}|, |g_{αβ||c}|, |g_{ab|μ}|, |g_{ab||c}|.
pub fn metricity_residual(kind: ConnKind, space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<[f64; 4]> {
    space.check_point(p)?;
    let b = metricity_blocks(kind, space, p);
    Ok([b[0].max_abs(), b[1].max_abs(), b[2].max_abs(), b[3].max_abs()])
}

/// g_{αβ|μ}, g_{αβ||c}, g_{ab|μ}, g_{ab||c} as blocks.
pub fn metricity_blocks(kind: ConnKind, space: &SpaceDefinition, p: &SpacePoint<f64>) -> [TensorBlock<f64>; 4] {
    [
        hcov(Quantity::MetricH, kind).eval(space, p),
        vcov(Quantity::MetricH, kind).eval(space, p),
        hcov(Quantity::MetricV, kind).eval(space, p),
        vcov(Quantity::MetricV, kind).eval(space, p),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::builtin_space;

    #[test]
    fn diagonal_coframe() {
        let f = FramePair { lh: Mat::from_rows(&[vec![0.5, 0.0], vec![0.0, 1.0 / 3.0]]), lv: Mat::identity(2) };
        let cf = CoFramePair { ch: Mat::from_rows(&[vec![2.0, 0.0], vec![0.0, 3.0]]), cv: Mat::identity(2) };
        let g = metric_from_frame(&cf, &f).unwrap();
        assert_eq!(g.gh, Mat::from_rows(&[vec![4.0, 0.0], vec![0.0, 9.0]]));
        assert!((g.gh_inv[(0, 0)] - 0.25).abs() < 1e-15);
        assert!((g.gh_inv[(1, 1)] - 1.0 / 9.0).abs() < 1e-15);
        assert_eq!(g.gv, Mat::identity(2));
    }

    #[test]
    fn inconsistent_pair_rejected() {
        let f = FramePair { lh: Mat::identity(2), lv: Mat::identity(2) };
        let cf = CoFramePair { ch: Mat::from_rows(&[vec![2.0, 0.0], vec![0.0, 1.0]]), cv: Mat::identity(2) };
        assert!(matches!(metric_from_frame(&cf, &f), Err(GeomError::InconsistentFrame { .. })));
    }

    #[test]
    fn natural_is_metric_and_symmetric() {
        let s = builtin_space("generic2").unwrap();
        let p = SpacePoint::new(vec![0.3, -0.2], vec![0.7, 0.9]).unwrap();
        let r = metricity_residual(ConnKind::Natural, &s, &p).unwrap();
        assert!(r.iter().all(|v| *v < 1e-10), "{r:?}");
        let d = natural_connection(&s, &p).unwrap();
        assert_eq!(d.gh, d.gh.swap_last());
        assert!(d.cv.max_diff(&d.cv.swap_last()) == 0.0);
    }
}
