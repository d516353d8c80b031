//! The four d-connections of a parallelized TM, torsion, contortion and the basic vector.

use crate::calculus::{hcov, vcov, FrameJet, TensorField};
use crate::error::{GeomError, Result};
use crate::fields::Quantity;
use crate::metric::{natural_from_jet, HvMetric};
use crate::scalar::Scalar;
use crate::space::{SpaceDefinition, SpacePoint};
use crate::tensor::{TensorBlock, HL, HU, VL, VU};
use serde::Serialize;

/// Γ^α_{μν} `[α][μ][ν]`, Γ^a_{bν} `[a][b][ν]`, C^α_{μc} `[α][μ][c]`, C^a_{bc} `[a][b][c]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionCoefficients<S> {
    pub gh: TensorBlock<S>,
    pub gv: TensorBlock<S>,
    pub ch: TensorBlock<S>,
    pub cv: TensorBlock<S>,
}

impl<S: Scalar> ConnectionCoefficients<S> {
    pub fn zeros(n: usize) -> Self {
        ConnectionCoefficients {
            gh: TensorBlock::zeros(n, &[HU, HL, HL]),
            gv: TensorBlock::zeros(n, &[VU, VL, HL]),
            ch: TensorBlock::zeros(n, &[HU, HL, VL]),
            cv: TensorBlock::zeros(n, &[VU, VL, VL]),
        }
    }

    /// Swap μν in Γ^α_{μν} and bc in C^a_{bc}.
    pub fn dual(&self) -> Self {
        ConnectionCoefficients {
            gh: self.gh.swap_last(),
            gv: self.gv.clone(),
            ch: self.ch.clone(),
            cv: self.cv.swap_last(),
        }
    }

    /// Symmetrize Γ^α_{μν} in μν and C^a_{bc} in bc.
    pub fn symmetric(&self) -> Self {
        let half = |t: &TensorBlock<S>| t.add(&t.swap_last()).scaled(0.5);
        ConnectionCoefficients { gh: half(&self.gh), gv: self.gv.clone(), ch: self.ch.clone(), cv: half(&self.cv) }
    }

    pub fn blocks(&self) -> [&TensorBlock<S>; 4] {
        [&self.gh, &self.gv, &self.ch, &self.cv]
    }

    pub fn values(&self) -> ConnectionCoefficients<f64> {
        ConnectionCoefficients {
            gh: self.gh.values(),
            gv: self.gv.values(),
            ch: self.ch.values(),
            cv: self.cv.values(),
        }
    }
}

impl ConnectionCoefficients<f64> {
    pub fn max_diff(&self, o: &Self) -> f64 {
        self.blocks().iter().zip(o.blocks()).map(|(a, b)| a.max_diff(b)).fold(0.0, f64::max)
    }
    pub fn max_abs(&self) -> f64 {
        self.blocks().iter().map(|b| b.max_abs()).fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConnKind {
    Canonical,
    Natural,
    Dual,
    Symmetric,
}

impl ConnKind {
    pub const ALL: [ConnKind; 4] = [ConnKind::Canonical, ConnKind::Natural, ConnKind::Dual, ConnKind::Symmetric];
    pub const DERIVED: [ConnKind; 3] = [ConnKind::Natural, ConnKind::Dual, ConnKind::Symmetric];

    pub fn name(&self) -> &'static str {
        match self {
            ConnKind::Canonical => "canonical",
            ConnKind::Natural => "natural",
            ConnKind::Dual => "dual",
            ConnKind::Symmetric => "symmetric",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        ConnKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| GeomError::UnknownObject(format!("connection `{s}`")))
    }

    pub fn from_jet<S: Scalar>(&self, fj: &FrameJet<S>) -> ConnectionCoefficients<S> {
        match self {
            ConnKind::Canonical => canonical_from_jet(fj),
            ConnKind::Natural => natural_from_jet(fj),
            ConnKind::Dual => canonical_from_jet(fj).dual(),
            ConnKind::Symmetric => canonical_from_jet(fj).symmetric(),
        }
    }

    /// Unchecked coefficients at any scalar type.
    pub fn coefficients<S: Scalar>(&self, space: &SpaceDefinition, p: &SpacePoint<S>) -> ConnectionCoefficients<S> {
        self.from_jet(&FrameJet::new(space, p))
    }
}

/// Γ = λ_i^• δ λ_i_•, C = λ_i^• ∂̇ λ_i_•.
pub fn canonical_from_jet<S: Scalar>(fj: &FrameJet<S>) -> ConnectionCoefficients<S> {
    let n = fj.n;
    let (lh, lv) = (&fj.frame.lh, &fj.frame.lv);
    let dch: Vec<_> = (0..n).map(|m| fj.delta(&fj.d_ch, m)).collect();
    let dcv: Vec<_> = (0..n).map(|m| fj.delta(&fj.d_cv, m)).collect();
    let contract = |l: &crate::linalg::Mat<S>, d: &crate::linalg::Mat<S>, up: usize, lo: usize| {
        let mut s = S::zero();
        for i in 0..n {
            s += l[(i, up)] * d[(i, lo)];
        }
        s
    };
    ConnectionCoefficients {
        gh: TensorBlock::from_fn(n, &[HU, HL, HL], |i| contract(lh, &dch[i[2]], i[0], i[1])),
        gv: TensorBlock::from_fn(n, &[VU, VL, HL], |i| contract(lv, &dcv[i[2]], i[0], i[1])),
        ch: TensorBlock::from_fn(n, &[HU, HL, VL], |i| contract(lh, fj.dot(&fj.d_ch, i[2]), i[0], i[1])),
        cv: TensorBlock::from_fn(n, &[VU, VL, VL], |i| contract(lv, fj.dot(&fj.d_cv, i[2]), i[0], i[1])),
    }
}

pub fn canonical_connection(space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<ConnectionCoefficients<f64>> {
    space.check_point(p)?;
    crate::space::invert_frame(&space.frame(p))?;
    Ok(ConnKind::Canonical.coefficients(space, p))
}

pub fn dual_connection<S: Scalar>(d: &ConnectionCoefficients<S>) -> ConnectionCoefficients<S> {
    d.dual()
}

pub fn symmetric_connection<S: Scalar>(d: &ConnectionCoefficients<S>) -> ConnectionCoefficients<S> {
    d.symmetric()
}

/// Natural-connection covariant derivatives of the coframe, `[i][•][•]`.
pub struct CoframeNaturalDerivatives {
    pub h_h: TensorBlock<f64>,
    pub h_v: TensorBlock<f64>,
    pub v_h: TensorBlock<f64>,
    pub v_v: TensorBlock<f64>,
}

fn coframe_natural(space: &SpaceDefinition, p: &SpacePoint<f64>) -> CoframeNaturalDerivatives {
    let k = ConnKind::Natural;
    CoframeNaturalDerivatives {
        h_h: hcov(Quantity::CoframeH, k).eval(space, p),
        h_v: vcov(Quantity::CoframeH, k).eval(space, p),
        v_h: hcov(Quantity::CoframeV, k).eval(space, p),
        v_v: vcov(Quantity::CoframeV, k).eval(space, p),
    }
}

/// γ = λ_i^• λ_i_{• o|•}, all four blocks, from natural covariant derivatives of the coframe.
pub fn contortion_via_lambda(space: &SpaceDefinition, p: &SpacePoint<f64>) -> ContortionBundle<f64> {
    let n = space.n;
    let f = space.frame(p);
    let d = coframe_natural(space, p);
    let c = |l: &crate::linalg::Mat<f64>, t: &TensorBlock<f64>, up: usize, lo: usize, k: usize| {
        (0..n).map(|i| l[(i, up)] * t[[i, lo, k]]).sum::<f64>()
    };
    ContortionBundle {
        hh: TensorBlock::from_fn(n, &[HU, HL, HL], |i| c(&f.lh, &d.h_h, i[0], i[1], i[2])),
        vh: TensorBlock::from_fn(n, &[VU, VL, HL], |i| c(&f.lv, &d.v_h, i[0], i[1], i[2])),
        hv: TensorBlock::from_fn(n, &[HU, HL, VL], |i| c(&f.lh, &d.h_v, i[0], i[1], i[2])),
        vv: TensorBlock::from_fn(n, &[VU, VL, VL], |i| c(&f.lv, &d.v_v, i[0], i[1], i[2])),
    }
}

/// Canonical connection as natural connection plus λ-contracted natural derivatives.
pub fn canonical_via_contortion(space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<ConnectionCoefficients<f64>> {
    space.check_point(p)?;
    let nat = ConnKind::Natural.coefficients(space, p);
    let g = contortion_via_lambda(space, p);
    Ok(ConnectionCoefficients {
        gh: nat.gh.add(&g.hh),
        gv: nat.gv.add(&g.vh),
        ch: nat.ch.add(&g.hv),
        cv: nat.cv.add(&g.vv),
    })
}

/// Natural connection as λ_i^•(δ λ_i_• − λ_i_{• o|•}).
pub fn natural_connection_via_lambda(
    space: &SpaceDefinition,
    p: &SpacePoint<f64>,
) -> Result<ConnectionCoefficients<f64>> {
    space.check_point(p)?;
    let can = ConnKind::Canonical.coefficients(space, p);
    let g = contortion_via_lambda(space, p);
    Ok(ConnectionCoefficients {
        gh: can.gh.sub(&g.hh),
        gv: can.gv.sub(&g.vh),
        ch: can.ch.sub(&g.hv),
        cv: can.cv.sub(&g.vv),
    })
}

/// (Λ^α_{μν}, R^a_{μν}, C^α_{μc}, P^a_{μc}, T^a_{bc}).
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionBundle<S> {
    pub lam: TensorBlock<S>,
    pub rnl: TensorBlock<S>,
    pub chv: TensorBlock<S>,
    pub p: TensorBlock<S>,
    pub tv: TensorBlock<S>,
}

impl<S: Scalar> TorsionBundle<S> {
    pub fn blocks(&self) -> [&TensorBlock<S>; 5] {
        [&self.lam, &self.rnl, &self.chv, &self.p, &self.tv]
    }
}

pub const TORSION_NAMES: [&str; 5] = ["Lambda", "R", "C", "P", "T"];

pub fn torsion_from<S: Scalar>(d: &ConnectionCoefficients<S>, fj: &FrameJet<S>) -> TorsionBundle<S> {
    let n = fj.n;
    let dn = fj.dot_nlc();
    TorsionBundle {
        lam: d.gh.sub(&d.gh.swap_last()),
        rnl: fj.nlc_curvature(),
        chv: d.ch.clone(),
        p: TensorBlock::from_fn(n, &[VU, HL, VL], |i| dn[[i[0], i[2], i[1]]] - d.gv[[i[0], i[2], i[1]]]),
        tv: d.cv.sub(&d.cv.swap_last()),
    }
}

pub fn torsion_at<S: Scalar>(kind: ConnKind, space: &SpaceDefinition, p: &SpacePoint<S>) -> TorsionBundle<S> {
    let fj = FrameJet::new(space, p);
    torsion_from(&kind.from_jet(&fj), &fj)
}

pub fn torsion(kind: ConnKind, space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<TorsionBundle<f64>> {
    space.check_point(p)?;
    Ok(torsion_at(kind, space, p))
}

/// γ^α_{μν}, γ^a_{bμ}, γ^α_{μc}, γ^a_{bc} (canonical minus natural).
#[derive(Clone, Debug, PartialEq)]
pub struct ContortionBundle<S> {
    pub hh: TensorBlock<S>,
    pub vh: TensorBlock<S>,
    pub hv: TensorBlock<S>,
    pub vv: TensorBlock<S>,
}

impl<S: Scalar> ContortionBundle<S> {
    pub fn blocks(&self) -> [&TensorBlock<S>; 4] {
        [&self.hh, &self.vh, &self.hv, &self.vv]
    }
}

pub fn contortion_from_jet<S: Scalar>(fj: &FrameJet<S>) -> ContortionBundle<S> {
    let c = canonical_from_jet(fj);
    let o = natural_from_jet(fj);
    ContortionBundle { hh: c.gh.sub(&o.gh), vh: c.gv.sub(&o.gv), hv: c.ch.sub(&o.ch), vv: c.cv.sub(&o.cv) }
}

pub fn contortion(space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<ContortionBundle<f64>> {
    space.check_point(p)?;
    Ok(contortion_from_jet(&FrameJet::new(space, p)))
}

/// Lowers the upper index of a `[up][·][·]` block with `g`.
pub fn lower_first<S: Scalar>(g: &crate::linalg::Mat<S>, t: &TensorBlock<S>) -> TensorBlock<S> {
    let n = t.n;
    let mut sig = t.sig.clone();
    sig[0] = match sig[0] {
        s if s == HU => HL,
        _ => VL,
    };
    TensorBlock::from_fn(n, &sig, |i| {
        let mut s = S::zero();
        for e in 0..n {
            s += g[(i[0], e)] * t[[e, i[1], i[2]]];
        }
        s
    })
}

/// γ_{αμν} = ½(Λ_{αμν} + Λ_{νμα} + Λ_{μνα}) and γ_{abc} = ½(T_{abc} + T_{cba} + T_{bca}).
pub fn contortion_from_torsion<S: Scalar>(t: &TorsionBundle<S>, g: &HvMetric<S>) -> (TensorBlock<S>, TensorBlock<S>) {
    let build = |low: TensorBlock<S>| {
        TensorBlock::from_fn(low.n, &low.sig.clone(), |i| {
            let (a, m, v) = (i[0], i[1], i[2]);
            (low[[a, m, v]] + low[[v, m, a]] + low[[m, v, a]]).scale(0.5)
        })
    };
    (build(lower_first(&g.gh, &t.lam)), build(lower_first(&g.gv, &t.tv)))
}

/// C_μ and C_a from torsion traces and from contortion traces.
#[derive(Clone, Debug, PartialEq)]
pub struct BasicVector<S> {
    pub ch: TensorBlock<S>,
    pub cv: TensorBlock<S>,
}

pub fn basic_vector_from_torsion<S: Scalar>(t: &TorsionBundle<S>) -> BasicVector<S> {
    let n = t.lam.n;
    BasicVector {
        ch: TensorBlock::from_fn(n, &[HL], |i| (0..n).fold(S::zero(), |s, a| s + t.lam[[a, i[0], a]])),
        cv: TensorBlock::from_fn(n, &[VL], |i| (0..n).fold(S::zero(), |s, a| s + t.tv[[a, i[0], a]])),
    }
}

pub fn basic_vector_from_contortion<S: Scalar>(g: &ContortionBundle<S>) -> BasicVector<S> {
    let n = g.hh.n;
    BasicVector {
        ch: TensorBlock::from_fn(n, &[HL], |i| (0..n).fold(S::zero(), |s, a| s + g.hh[[a, i[0], a]])),
        cv: TensorBlock::from_fn(n, &[VL], |i| (0..n).fold(S::zero(), |s, a| s + g.vv[[a, i[0], a]])),
    }
}

/// Both routes; the torsion-trace route is returned first.
pub fn basic_vector<S: Scalar>(t: &TorsionBundle<S>, g: &ContortionBundle<S>) -> (BasicVector<S>, BasicVector<S>) {
    (basic_vector_from_torsion(t), basic_vector_from_contortion(g))
}

/// Residuals of Λ = γ − γᵀ, P^a_{μb} = −γ^a_{bμ} + P̊^a_{μb}, C = γ + C̊, T = γ − γᵀ.
pub fn torsion_contortion_relations(space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<[(f64, f64); 4]> {
    space.check_point(p)?;
    let fj = FrameJet::new(space, p);
    let t = torsion_from(&canonical_from_jet(&fj), &fj);
    let nat = natural_from_jet(&fj);
    let tn = torsion_from(&nat, &fj);
    let g = contortion_from_jet(&fj);
    let n = space.n;
    let lam = g.hh.sub(&g.hh.swap_last());
    let pr = TensorBlock::from_fn(n, &[VU, HL, VL], |i| -g.vh[[i[0], i[2], i[1]]] + tn.p[[i[0], i[1], i[2]]]);
    let c = g.hv.add(&nat.ch);
    let tv = g.vv.sub(&g.vv.swap_last());
    Ok([
        crate::tensor::diff_and_scale(&t.lam, &lam),
        crate::tensor::diff_and_scale(&t.p, &pr),
        crate::tensor::diff_and_scale(&t.chv, &c),
        crate::tensor::diff_and_scale(&t.tv, &tv),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{h_covariant_derivative, v_covariant_derivative};
    use crate::metric::metric;
    use crate::space::builtin_space;

    fn at() -> (SpaceDefinition, SpacePoint<f64>) {
        (builtin_space("generic2").unwrap(), SpacePoint::new(vec![0.3, -0.2], vec![0.7, 0.9]).unwrap())
    }

    #[test]
    fn ap_condition() {
        let (s, p) = at();
        for q in [Quantity::FrameH, Quantity::FrameV, Quantity::CoframeH, Quantity::CoframeV] {
            let h = h_covariant_derivative(&q, ConnKind::Canonical, &s, &p).unwrap();
            let v = v_covariant_derivative(&q, ConnKind::Canonical, &s, &p).unwrap();
            assert!(h.max_abs() < 1e-12 && v.max_abs() < 1e-12, "{q:?}");
        }
    }

    #[test]
    fn two_routes() {
        let (s, p) = at();
        let can = canonical_connection(&s, &p).unwrap();
        let nat = ConnKind::Natural.coefficients(&s, &p);
        assert!(can.max_diff(&canonical_via_contortion(&s, &p).unwrap()) < 1e-10);
        assert!(nat.max_diff(&natural_connection_via_lambda(&s, &p).unwrap()) < 1e-10);
        assert!(can.max_diff(&nat) > 1e-3);
    }

    #[test]
    fn dual_is_involution() {
        let (s, p) = at();
        let can = canonical_connection(&s, &p).unwrap();
        assert_eq!(can.dual().dual(), can);
        let sym = can.symmetric();
        assert_eq!(sym.dual(), sym);
    }

    #[test]
    fn table1_patterns() {
        let (s, p) = at();
        let c = torsion(ConnKind::Canonical, &s, &p).unwrap();
        let d = torsion(ConnKind::Dual, &s, &p).unwrap();
        let h = torsion(ConnKind::Symmetric, &s, &p).unwrap();
        let o = torsion(ConnKind::Natural, &s, &p).unwrap();
        assert!(d.lam.add(&c.lam).max_abs() < 1e-12);
        assert!(d.tv.add(&c.tv).max_abs() < 1e-12);
        assert!(d.p.max_diff(&c.p) < 1e-12 && h.p.max_diff(&c.p) < 1e-12);
        assert!(h.lam.max_abs() < 1e-12 && h.tv.max_abs() < 1e-12);
        assert!(o.lam.max_abs() < 1e-12 && o.tv.max_abs() < 1e-12);
        for t in [&c, &d, &h, &o] {
            assert!(t.rnl.max_diff(&c.rnl) == 0.0);
        }
        assert!(c.lam.max_abs() > 1e-3 && c.tv.max_abs() > 1e-3 && c.p.max_abs() > 1e-3);
    }

    #[test]
    fn contortion_relations() {
        let (s, p) = at();
        for (r, _) in torsion_contortion_relations(&s, &p).unwrap() {
            assert!(r < 1e-10);
        }
        let t = torsion(ConnKind::Canonical, &s, &p).unwrap();
        let g = contortion(&s, &p).unwrap();
        let m = metric(&s, &p).unwrap();
        let (hh, vv) = contortion_from_torsion(&t, &m);
        assert!(hh.max_diff(&lower_first(&m.gh, &g.hh)) < 1e-10);
        assert!(vv.max_diff(&lower_first(&m.gv, &g.vv)) < 1e-10);
        let (a, b) = basic_vector(&t, &g);
        assert!(a.ch.max_diff(&b.ch) < 1e-12 && a.cv.max_diff(&b.cv) < 1e-12);
        let via = contortion_via_lambda(&s, &p);
        for (x, y) in via.blocks().iter().zip(g.blocks()) {
            assert!(x.max_diff(y) < 1e-10);
        }
    }
}
