//! W-tensors: commutators of covariant derivatives of the frame, closed forms, cyclic identities, census.

use crate::calculus::{hcov, vcov, FrameJet, TensorField};
use crate::connections::{contortion_from_jet, torsion_from, ConnKind};
use crate::curvature::{curvature_formula, natural_curvature_formula, symmetric_curvature_formula, CurvatureBundle};
use crate::error::Result;
use crate::fields::{ContortionBlock, Quantity, TorsionBlock};
use crate::space::{SpaceDefinition, SpacePoint};
use crate::tensor::{cyclic, TensorBlock, HL, HU, VL, VU};
use serde::Serialize;

/// W^α_{βνμ}, W^a_{bνμ}, W^α_{βνc}, W^a_{bνc}, W^α_{βbc}, W^a_{bcd}, each in that slot order.
#[derive(Clone, Debug, PartialEq)]
pub struct WBundle {
    pub hhh: TensorBlock<f64>,
    pub hhv: TensorBlock<f64>,
    pub vhh: TensorBlock<f64>,
    pub vhv: TensorBlock<f64>,
    pub vvh: TensorBlock<f64>,
    pub vvv: TensorBlock<f64>,
}

pub const W_NAMES: [&str; 6] = ["W_hhh", "W_hhv", "W_vhh", "W_vhv", "W_vvh", "W_vvv"];

impl WBundle {
    pub fn zeros(n: usize) -> Self {
        WBundle {
            hhh: TensorBlock::zeros(n, &[HU, HL, HL, HL]),
            hhv: TensorBlock::zeros(n, &[VU, VL, HL, HL]),
            vhh: TensorBlock::zeros(n, &[HU, HL, HL, VL]),
            vhv: TensorBlock::zeros(n, &[VU, VL, HL, VL]),
            vvh: TensorBlock::zeros(n, &[HU, HL, VL, VL]),
            vvv: TensorBlock::zeros(n, &[VU, VL, VL, VL]),
        }
    }

    pub fn blocks(&self) -> [&TensorBlock<f64>; 6] {
        [&self.hhh, &self.hhv, &self.vhh, &self.vhv, &self.vvh, &self.vvv]
    }

    pub fn block_diffs(&self, o: &Self) -> [f64; 6] {
        let (a, b) = (self.blocks(), o.blocks());
        std::array::from_fn(|k| a[k].max_diff(b[k]))
    }

    pub fn max_diff(&self, o: &Self) -> f64 {
        self.block_diffs(o).into_iter().fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks().iter().map(|b| b.max_abs()).fold(0.0, f64::max)
    }
}

/// Contracts `Σ_i λ_i_β (X[i][α][p][q] − Y[i][α][q][p])` with the coframe block `co`.
fn extract(co: &crate::linalg::Mat<f64>, x: &TensorBlock<f64>, y: &TensorBlock<f64>, sig: &[crate::tensor::Slot]) -> TensorBlock<f64> {
    let n = x.n;
    TensorBlock::from_fn(n, sig, |i| {
        let (a, b, p, q) = (i[0], i[1], i[2], i[3]);
        (0..n).map(|k| co[(k, b)] * (x[[k, a, p, q]] - y[[k, a, q, p]])).sum()
    })
}

/// W-tensors from the commutators of second covariant derivatives of λ under `kind`.
pub fn w_via_commutator(kind: ConnKind, space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<WBundle> {
    space.check_point(p)?;
    let cf = crate::space::invert_frame(&space.frame(p))?;
    let (fh, fv) = (Quantity::FrameH, Quantity::FrameV);
    let hh = |q: Quantity| hcov(hcov(q, kind), kind).eval(space, p);
    let hv = |q: Quantity| vcov(hcov(q, kind), kind).eval(space, p);
    let vh = |q: Quantity| hcov(vcov(q, kind), kind).eval(space, p);
    let vv = |q: Quantity| vcov(vcov(q, kind), kind).eval(space, p);
    let (h_hh, v_hh) = (hh(fh), hh(fv));
    let (h_hv, h_vh) = (hv(fh), vh(fh));
    let (v_hv, v_vh) = (hv(fv), vh(fv));
    let (h_vv, v_vv) = (vv(fh), vv(fv));
    Ok(WBundle {
        hhh: extract(&cf.ch, &h_hh, &h_hh, &[HU, HL, HL, HL]),
        hhv: extract(&cf.cv, &v_hh, &v_hh, &[VU, VL, HL, HL]),
        vhh: extract(&cf.ch, &h_hv, &h_vh, &[HU, HL, HL, VL]),
        vhv: extract(&cf.cv, &v_hv, &v_vh, &[VU, VL, HL, VL]),
        vvh: extract(&cf.ch, &h_vv, &h_vv, &[HU, HL, VL, VL]),
        vvv: extract(&cf.cv, &v_vv, &v_vv, &[VU, VL, VL, VL]),
    })
}

/// hhh block from the coframe commutator `λ_{β|μ|ν} − λ_{β|ν|μ} = λ_ε W'^ε_{βμν}`, stored `[ε][β][μ][ν]`.
pub fn w_hhh_covariant_route(kind: ConnKind, space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<TensorBlock<f64>> {
    space.check_point(p)?;
    let f = space.frame(p);
    let y = hcov(hcov(Quantity::CoframeH, kind), kind).eval(space, p);
    let n = space.n;
    Ok(TensorBlock::from_fn(n, &[HU, HL, HL, HL], |i| {
        let (e, b, m, v) = (i[0], i[1], i[2], i[3]);
        (0..n).map(|k| f.lh[(k, e)] * (y[[k, b, m, v]] - y[[k, b, v, m]])).sum()
    }))
}

fn sum(n: usize, f: impl Fn(usize) -> f64) -> f64 {
    (0..n).map(f).sum()
}

fn hd(q: Quantity, space: &SpaceDefinition, p: &SpacePoint<f64>) -> TensorBlock<f64> {
    hcov(q, ConnKind::Canonical).eval(space, p)
}

fn vd(q: Quantity, space: &SpaceDefinition, p: &SpacePoint<f64>) -> TensorBlock<f64> {
    vcov(q, ConnKind::Canonical).eval(space, p)
}

pub fn w_natural_formula(space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<WBundle> {
    let curv = natural_curvature_formula(space, p)?;
    let n = space.n;
    let fj = FrameJet::new(space, p);
    let t = torsion_from(&ConnKind::Canonical.from_jet(&fj), &fj);
    let g = contortion_from_jet(&fj);
    let (hh, vh, hv, vv) = (&g.hh, &g.vh, &g.hv, &g.vv);
    let lam = &t.lam;
    let q = Quantity::Contortion;
    let hh_h = hd(q(ContortionBlock::Hh), space, p);
    let vh_h = hd(q(ContortionBlock::Vh), space, p);
    let hv_h = hd(q(ContortionBlock::Hv), space, p);
    let vv_h = hd(q(ContortionBlock::Vv), space, p);
    let hh_v = vd(q(ContortionBlock::Hh), space, p);
    let vh_v = vd(q(ContortionBlock::Vh), space, p);
    Ok(WBundle {
        hhh: TensorBlock::from_fn(n, &[HU, HL, HL, HL], |i| {
            let (a, b, v, m) = (i[0], i[1], i[2], i[3]);
            hh_h[[a, b, m, v]] - hh_h[[a, b, v, m]]
                + sum(n, |e| hh[[e, b, v]] * hh[[a, e, m]] - hh[[e, b, m]] * hh[[a, e, v]])
                - sum(n, |e| hh[[a, b, e]] * lam[[e, v, m]])
        }),
        hhv: TensorBlock::from_fn(n, &[VU, VL, HL, HL], |i| {
            let (a, b, v, m) = (i[0], i[1], i[2], i[3]);
            vh_h[[a, b, m, v]] - vh_h[[a, b, v, m]]
                + sum(n, |d| vh[[d, b, v]] * vh[[a, d, m]] - vh[[d, b, m]] * vh[[a, d, v]])
                - sum(n, |e| vh[[a, b, e]] * lam[[e, v, m]])
        }),
        vhh: TensorBlock::from_fn(n, &[HU, HL, HL, VL], |i| {
            let (a, b, v, c) = (i[0], i[1], i[2], i[3]);
            hv_h[[a, b, c, v]] - hh_v[[a, b, v, c]]
                + sum(n, |e| hh[[e, b, v]] * hv[[a, e, c]] - hv[[e, b, c]] * hh[[a, e, v]])
                + sum(n, |d| vh[[d, c, v]] * hv[[a, b, d]])
                - sum(n, |e| hv[[e, v, c]] * hh[[a, b, e]])
        }),
        vhv: TensorBlock::from_fn(n, &[VU, VL, HL, VL], |i| {
            let (a, b, v, c) = (i[0], i[1], i[2], i[3]);
            vv_h[[a, b, c, v]] - vh_v[[a, b, v, c]]
                + sum(n, |d| vh[[d, b, v]] * vv[[a, d, c]] - vv[[d, b, c]] * vh[[a, d, v]])
                + sum(n, |d| vh[[d, c, v]] * vv[[a, b, d]])
                - sum(n, |e| hv[[e, v, c]] * vh[[a, b, e]])
        }),
        vvh: curv.s_h.swap_last(),
        vvv: curv.s_v.swap_last(),
    })
}

pub fn w_dual_formula(space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<WBundle> {
    space.check_point(p)?;
    let n = space.n;
    let fj = FrameJet::new(space, p);
    let t = torsion_from(&ConnKind::Canonical.from_jet(&fj), &fj);
    let (lam, r, cc, tv) = (&t.lam, &t.rnl, &t.chv, &t.tv);
    let k = ConnKind::Canonical;
    let lam_h = hd(Quantity::Torsion(k, TorsionBlock::Lam), space, p);
    let lam_v = vd(Quantity::Torsion(k, TorsionBlock::Lam), space, p);
    let t_h = hd(Quantity::Torsion(k, TorsionBlock::T), space, p);
    let t_v = vd(Quantity::Torsion(k, TorsionBlock::T), space, p);
    let mut w = WBundle::zeros(n);
    w.hhh = TensorBlock::from_fn(n, &[HU, HL, HL, HL], |i| {
        let (a, b, v, m) = (i[0], i[1], i[2], i[3]);
        lam_h[[a, v, m, b]]
            - sum(n, |e| lam[[e, v, m]] * lam[[a, b, e]])
            + sum(n, |e| cyclic(v, m, b, |x, y, z| cc[[a, z, e]] * r[[e, x, y]]))
    });
    w.vhh = TensorBlock::from_fn(n, &[HU, HL, HL, VL], |i| lam_v[[i[0], i[2], i[1], i[3]]]);
    w.vhv = TensorBlock::from_fn(n, &[VU, VL, HL, VL], |i| t_h[[i[0], i[1], i[3], i[2]]]);
    w.vvv = TensorBlock::from_fn(n, &[VU, VL, VL, VL], |i| {
        let (a, b, d, c) = (i[0], i[1], i[2], i[3]);
        t_v[[a, d, c, b]] - sum(n, |e| tv[[e, d, c]] * tv[[a, b, e]])
    });
    Ok(w)
}

pub fn w_symmetric_formula(space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<WBundle> {
    let curv = symmetric_curvature_formula(space, p)?;
    let dual = w_dual_formula(space, p)?;
    let n = space.n;
    let mut w = WBundle::zeros(n);
    w.hhh = curv.r_hh.swap_last();
    w.vhh = dual.vhh.scaled(0.5);
    w.vhv = dual.vhv.scaled(0.5);
    w.vvv = curv.s_v.swap_last();
    Ok(w)
}

/// Closed-form W-tensors for `kind`; the canonical ones vanish.
pub fn w_formula(kind: ConnKind, space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<WBundle> {
    match kind {
        ConnKind::Canonical => {
            space.check_point(p)?;
            Ok(WBundle::zeros(space.n))
        }
        ConnKind::Natural => w_natural_formula(space, p),
        ConnKind::Dual => w_dual_formula(space, p),
        ConnKind::Symmetric => w_symmetric_formula(space, p),
    }
}

/// Cyclic-sum residuals: natural and symmetric against 𝔖 R C, dual against 2 𝔖 (R C + Λ Λ).
#[derive(Clone, Debug, PartialEq)]
pub struct WCyclicResiduals {
    pub natural: f64,
    pub symmetric: f64,
    pub dual: f64,
    /// dual against 2 𝔖 R C alone; holds only where 𝔖 Λ^ε_{μν}Λ^α_{βε} vanishes
    pub dual_rc_only: f64,
    /// max |𝔖 R^a_{μβ} C^α_{νa}|
    pub rc_scale: f64,
    /// max |𝔖 W| over the three connections
    pub w_scale: f64,
}

pub fn w_cyclic_residual(space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<WCyclicResiduals> {
    let n = space.n;
    let fj = FrameJet::new(space, p);
    let t = torsion_from(&ConnKind::Canonical.from_jet(&fj), &fj);
    let (r, cc) = (&t.rnl, &t.chv);
    let wn = w_via_commutator(ConnKind::Natural, space, p)?;
    let wd = w_via_commutator(ConnKind::Dual, space, p)?;
    let ws = w_via_commutator(ConnKind::Symmetric, space, p)?;
    let lam = &t.lam;
    let mut out =
        WCyclicResiduals { natural: 0.0, symmetric: 0.0, dual: 0.0, dual_rc_only: 0.0, rc_scale: 0.0, w_scale: 0.0 };
    for a in 0..n {
        for b in 0..n {
            for m in 0..n {
                for v in 0..n {
                    let rc = cyclic(b, m, v, |b, m, v| sum(n, |e| r[[e, m, b]] * cc[[a, v, e]]));
                    let ll = cyclic(b, m, v, |b, m, v| sum(n, |e| lam[[e, m, v]] * lam[[a, b, e]]));
                    let sw = |w: &WBundle| cyclic(b, m, v, |b, m, v| w.hhh[[a, b, v, m]]);
                    let (x, y, z) = (sw(&wn), sw(&ws), sw(&wd));
                    out.natural = out.natural.max((x - rc).abs());
                    out.symmetric = out.symmetric.max((y - rc).abs());
                    out.dual = out.dual.max((z - 2.0 * (rc + ll)).abs());
                    out.dual_rc_only = out.dual_rc_only.max((z - 2.0 * rc).abs());
                    out.rc_scale = out.rc_scale.max(rc.abs());
                    out.w_scale = out.w_scale.max(x.abs()).max(y.abs()).max(z.abs());
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CensusLabel {
    Zero,
    CurvatureEqual,
    HalfDuplicate,
    Independent,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusEntry {
    pub connection: ConnKind,
    pub block: &'static str,
    pub label: CensusLabel,
    /// max |W| over all samples
    pub max_abs: f64,
    /// relative Frobenius distance to the matching curvature block
    pub curvature_distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WCensus {
    pub samples: usize,
    pub entries: Vec<CensusEntry>,
    pub zero: usize,
    pub curvature_equal: usize,
    pub half_duplicate: usize,
    pub independent: usize,
    /// max |Ŵ − ½ W̃| over the vhh and vhv blocks
    pub half_relation_residual: f64,
}

impl WCensus {
    /// Four zero, four curvature-equal, eight independent plus two half-duplicates.
    pub fn matches_expected(&self) -> bool {
        self.zero == 4 && self.curvature_equal == 4 && self.independent == 8 && self.half_duplicate == 2
    }
}

pub const CENSUS_TOL: f64 = 1e-8;

/// Curvature block matched against each W block, in the W slot order.
pub fn curvature_partner(c: &CurvatureBundle) -> [TensorBlock<f64>; 6] {
    [
        c.r_hh.swap_last(),
        c.r_vh.swap_last(),
        c.p_h.clone(),
        c.p_v.clone(),
        c.s_h.swap_last(),
        c.s_v.swap_last(),
    ]
}

fn rel(num: f64, den: f64) -> f64 {
    if den < 1e-300 {
        if num < 1e-300 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        num / den
    }
}

/// Labels the eighteen W blocks of the natural, dual and symmetric connections over `points`.
pub fn w_census(space: &SpaceDefinition, points: &[SpacePoint<f64>]) -> Result<WCensus> {
    let kinds = ConnKind::DERIVED;
    // per kind, per block: Σ|W|², Σ|W − K|², max|W|, Σ|Ŵ − ½W̃|²
    let mut norm = [[0.0f64; 6]; 3];
    let mut dist = [[0.0f64; 6]; 3];
    let mut maxw = [[0.0f64; 6]; 3];
    let mut half = [0.0f64; 6];
    let mut half_max = 0.0f64;
    for p in points {
        let ws: Vec<WBundle> = kinds.iter().map(|&k| w_via_commutator(k, space, p)).collect::<Result<_>>()?;
        for (ki, &k) in kinds.iter().enumerate() {
            let partner = curvature_partner(&curvature_formula(k, space, p)?);
            for (bi, blk) in ws[ki].blocks().iter().enumerate() {
                norm[ki][bi] += blk.frobenius().powi(2);
                dist[ki][bi] += blk.sub(&partner[bi]).frobenius().powi(2);
                maxw[ki][bi] = maxw[ki][bi].max(blk.max_abs());
            }
        }
        for bi in [2, 3] {
            half_max = half_max.max(ws[2].blocks()[bi].max_diff(&ws[1].blocks()[bi].scaled(0.5)));
        }
        for (bi, h) in half.iter_mut().enumerate() {
            *h += ws[2].blocks()[bi].sub(&ws[1].blocks()[bi].scaled(0.5)).frobenius().powi(2);
        }
    }
    let mut entries = Vec::new();
    for (ki, &k) in kinds.iter().enumerate() {
        for bi in 0..6 {
            let nrm = norm[ki][bi].sqrt();
            let d = rel(dist[ki][bi].sqrt(), nrm);
            let label = if maxw[ki][bi] < CENSUS_TOL {
                CensusLabel::Zero
            } else if d < CENSUS_TOL {
                CensusLabel::CurvatureEqual
            } else if k == ConnKind::Symmetric && rel(half[bi].sqrt(), nrm) < CENSUS_TOL {
                CensusLabel::HalfDuplicate
            } else {
                CensusLabel::Independent
            };
            entries.push(CensusEntry { connection: k, block: W_NAMES[bi], label, max_abs: maxw[ki][bi], curvature_distance: d });
        }
    }
    let count = |l: CensusLabel| entries.iter().filter(|e| e.label == l).count();
    Ok(WCensus {
        samples: points.len(),
        zero: count(CensusLabel::Zero),
        curvature_equal: count(CensusLabel::CurvatureEqual),
        half_duplicate: count(CensusLabel::HalfDuplicate),
        independent: count(CensusLabel::Independent),
        half_relation_residual: half_max,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::builtin_space;

    fn at() -> (SpaceDefinition, SpacePoint<f64>) {
        (builtin_space("generic2").unwrap(), SpacePoint::new(vec![0.3, -0.2], vec![0.7, 0.9]).unwrap())
    }

    #[test]
    fn canonical_w_vanishes() {
        let (s, p) = at();
        assert!(w_via_commutator(ConnKind::Canonical, &s, &p).unwrap().max_abs() < 1e-8);
    }

    #[test]
    fn formulas_match_commutators() {
        let (s, p) = at();
        for k in ConnKind::DERIVED {
            let a = w_via_commutator(k, &s, &p).unwrap();
            let b = w_formula(k, &s, &p).unwrap();
            let d = a.block_diffs(&b);
            assert!(d.iter().all(|v| *v < 1e-8), "{k:?} {d:?}");
        }
    }

    #[test]
    fn covariant_route_flips_sign() {
        let (s, p) = at();
        for k in ConnKind::DERIVED {
            let w = w_via_commutator(k, &s, &p).unwrap();
            let c = w_hhh_covariant_route(k, &s, &p).unwrap();
            assert!(w.hhh.add(&c).max_abs() < 1e-10, "{k:?}");
        }
    }

    #[test]
    fn cyclic_identities() {
        let (s, p) = at();
        let r = w_cyclic_residual(&s, &p).unwrap();
        assert!(r.natural < 1e-8 && r.symmetric < 1e-8 && r.dual < 1e-8, "{r:?}");
        // every cyclic sum here is vacuous at n = 2
        assert_eq!(r.w_scale, 0.0);
        let s = crate::space::auxiliary_space("generic3").unwrap();
        let p = SpacePoint::new(vec![0.3, -0.2, 0.1], vec![0.7, 0.9, -0.4]).unwrap();
        let r = w_cyclic_residual(&s, &p).unwrap();
        assert!(r.natural < 1e-8 && r.symmetric < 1e-8 && r.dual < 1e-8, "{r:?}");
        assert!(r.rc_scale > 1e-4 && r.w_scale > 1e-4, "{r:?}");
        assert!(r.dual_rc_only > 1e-3, "{r:?}");
    }

    #[test]
    fn census_on_generic2() {
        let s = builtin_space("generic2").unwrap();
        let c = w_census(&s, &s.sample(4, 42)).unwrap();
        assert!(c.matches_expected(), "{:#?}", c.entries);
    }
}
