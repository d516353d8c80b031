//! Horizontal and vertical scalar Lagrangian densities built from torsion and the basic vector.

use crate::calculus::FrameJet;
use crate::connections::{basic_vector_from_torsion, torsion_from, ConnKind};
use crate::error::Result;
use crate::linalg::Mat;
use crate::metric::metric_of;
use crate::space::{invert_frame, SpaceDefinition, SpacePoint};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LagrangianValues {
    /// H_{αβ} = Λ^ν_{εα}Λ^ε_{νβ} − C_αC_β
    pub h_ab: Vec<Vec<f64>>,
    pub h_scalar: f64,
    /// det(λ_i_α)
    pub det_h: f64,
    pub h_density: f64,
    /// V_{ab} = T^d_{ea}T^e_{db} − C_aC_b
    pub v_ab: Vec<Vec<f64>>,
    pub v_scalar: f64,
    /// det(λ_i_a)
    pub det_v: f64,
    pub v_density: f64,
}

fn rows(m: &Mat<f64>) -> Vec<Vec<f64>> {
    (0..m.n).map(|i| (0..m.n).map(|j| m[(i, j)]).collect()).collect()
}

fn trace_with(inv: &Mat<f64>, m: &Mat<f64>) -> f64 {
    let n = m.n;
    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| inv[(a, b)] * m[(a, b)]).sum()
}

pub fn lagrangians(space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<LagrangianValues> {
    space.check_point(p)?;
    let cf = invert_frame(&space.frame(p))?;
    let n = space.n;
    let fj = FrameJet::new(space, p);
    let t = torsion_from(&ConnKind::Canonical.from_jet(&fj), &fj);
    let c = basic_vector_from_torsion(&t);
    let g = metric_of(&fj.coframe, &fj.frame);
    let (lam, tv) = (&t.lam, &t.tv);
    let h = Mat::from_fn(n, |a, b| {
        let mut s = -c.ch[[a]] * c.ch[[b]];
        for v in 0..n {
            for e in 0..n {
                s += lam[[v, e, a]] * lam[[e, v, b]];
            }
        }
        s
    });
    let v = Mat::from_fn(n, |a, b| {
        let mut s = -c.cv[[a]] * c.cv[[b]];
        for d in 0..n {
            for e in 0..n {
                s += tv[[d, e, a]] * tv[[e, d, b]];
            }
        }
        s
    });
    let (hs, vs) = (trace_with(&g.gh_inv, &h), trace_with(&g.gv_inv, &v));
    let (dh, dv) = (cf.ch.det(), cf.cv.det());
    Ok(LagrangianValues {
        h_ab: rows(&h),
        h_scalar: hs,
        det_h: dh,
        h_density: dh * hs,
        v_ab: rows(&v),
        v_scalar: vs,
        det_v: dv,
        v_density: dv * vs,
    })
}
