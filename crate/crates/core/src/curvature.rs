//! Curvature of d-connections: direct route, closed forms, contractions, Bianchi residuals.

use crate::calculus::{adapted_partials, covariant_kernel, hcov, vcov, FrameJet, TensorField};
use crate::connections::{basic_vector_from_torsion, contortion_from_jet, torsion_from, ConnKind};
use crate::error::Result;
use crate::fields::{ConnBlock, ContortionBlock, Quantity, TorsionBlock};
use crate::metric::metric_of;
use crate::space::{SpaceDefinition, SpacePoint};
use crate::tensor::{cyclic, TensorBlock, HL, HU, VL, VU};

/// R^α_{βμν}, R^a_{bμν}, P^α_{βνc}, P^a_{bνc}, S^α_{βbc}, S^a_{bcd}, each in that slot order.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureBundle {
    pub r_hh: TensorBlock<f64>,
    pub r_vh: TensorBlock<f64>,
    pub p_h: TensorBlock<f64>,
    pub p_v: TensorBlock<f64>,
    pub s_h: TensorBlock<f64>,
    pub s_v: TensorBlock<f64>,
}

pub const CURVATURE_NAMES: [&str; 6] = ["R_hh", "R_vh", "P_h", "P_v", "S_h", "S_v"];

impl CurvatureBundle {
    pub fn zeros(n: usize) -> Self {
        CurvatureBundle {
            r_hh: TensorBlock::zeros(n, &[HU, HL, HL, HL]),
            r_vh: TensorBlock::zeros(n, &[VU, VL, HL, HL]),
            p_h: TensorBlock::zeros(n, &[HU, HL, HL, VL]),
            p_v: TensorBlock::zeros(n, &[VU, VL, HL, VL]),
            s_h: TensorBlock::zeros(n, &[HU, HL, VL, VL]),
            s_v: TensorBlock::zeros(n, &[VU, VL, VL, VL]),
        }
    }

    pub fn blocks(&self) -> [&TensorBlock<f64>; 6] {
        [&self.r_hh, &self.r_vh, &self.p_h, &self.p_v, &self.s_h, &self.s_v]
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks().iter().map(|b| b.max_abs()).fold(0.0, f64::max)
    }

    /// Blockwise max |self − o|.
    pub fn block_diffs(&self, o: &Self) -> [f64; 6] {
        let (a, b) = (self.blocks(), o.blocks());
        std::array::from_fn(|k| a[k].max_diff(b[k]))
    }

    pub fn max_diff(&self, o: &Self) -> f64 {
        self.block_diffs(o).into_iter().fold(0.0, f64::max)
    }
}

fn sum(n: usize, f: impl Fn(usize) -> f64) -> f64 {
    (0..n).map(f).sum()
}

fn sum2(n: usize, f: impl Fn(usize, usize) -> f64) -> f64 {
    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| f(a, b)).sum()
}

/// Canonical h-derivative of a field.
fn hd(q: Quantity, space: &SpaceDefinition, p: &SpacePoint<f64>) -> TensorBlock<f64> {
    hcov(q, ConnKind::Canonical).eval(space, p)
}

/// Canonical v-derivative of a field.
fn vd(q: Quantity, space: &SpaceDefinition, p: &SpacePoint<f64>) -> TensorBlock<f64> {
    vcov(q, ConnKind::Canonical).eval(space, p)
}

/// Adapted curvature blocks of `kind`, computed directly from its coefficients.
pub fn curvature_direct(kind: ConnKind, space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<CurvatureBundle> {
    space.check_point(p)?;
    let n = space.n;
    let fj = FrameJet::new(space, p);
    let d = kind.from_jet(&fj);
    let tor = torsion_from(&d, &fj);
    let (r, pt) = (&tor.rnl, &tor.p);
    let part = |b: ConnBlock, h: bool| adapted_partials(&Quantity::Conn(kind, b), space, p, h).1;
    let (gh_h, gh_v) = (part(ConnBlock::Gh, true), part(ConnBlock::Gh, false));
    let (gv_h, gv_v) = (part(ConnBlock::Gv, true), part(ConnBlock::Gv, false));
    let (ch_h, ch_v) = (part(ConnBlock::Ch, true), part(ConnBlock::Ch, false));
    let (cv_h, cv_v) = (part(ConnBlock::Cv, true), part(ConnBlock::Cv, false));
    let ch_cov = covariant_kernel(&d.ch, &ch_h, &d, true);
    let cv_cov = covariant_kernel(&d.cv, &cv_h, &d, true);
    let (gh, gv, ch, cv) = (&d.gh, &d.gv, &d.ch, &d.cv);

    Ok(CurvatureBundle {
        r_hh: TensorBlock::from_fn(n, &[HU, HL, HL, HL], |i| {
            let (a, b, m, v) = (i[0], i[1], i[2], i[3]);
            gh_h[m][[a, b, v]] - gh_h[v][[a, b, m]]
                + sum(n, |e| gh[[e, b, v]] * gh[[a, e, m]] - gh[[e, b, m]] * gh[[a, e, v]])
                + sum(n, |e| ch[[a, b, e]] * r[[e, v, m]])
        }),
        r_vh: TensorBlock::from_fn(n, &[VU, VL, HL, HL], |i| {
            let (a, b, m, v) = (i[0], i[1], i[2], i[3]);
            gv_h[m][[a, b, v]] - gv_h[v][[a, b, m]]
                + sum(n, |e| gv[[e, b, v]] * gv[[a, e, m]] - gv[[e, b, m]] * gv[[a, e, v]])
                + sum(n, |e| cv[[a, b, e]] * r[[e, v, m]])
        }),
        p_h: TensorBlock::from_fn(n, &[HU, HL, HL, VL], |i| {
            let (a, b, v, c) = (i[0], i[1], i[2], i[3]);
            gh_v[c][[a, b, v]] - ch_cov[[a, b, c, v]] + sum(n, |e| ch[[a, b, e]] * pt[[e, v, c]])
        }),
        p_v: TensorBlock::from_fn(n, &[VU, VL, HL, VL], |i| {
            let (a, b, v, c) = (i[0], i[1], i[2], i[3]);
            gv_v[c][[a, b, v]] - cv_cov[[a, b, c, v]] + sum(n, |e| cv[[a, b, e]] * pt[[e, v, c]])
        }),
        s_h: TensorBlock::from_fn(n, &[HU, HL, VL, VL], |i| {
            let (a, be, b, c) = (i[0], i[1], i[2], i[3]);
            ch_v[b][[a, be, c]] - ch_v[c][[a, be, b]]
                + sum(n, |e| ch[[e, be, c]] * ch[[a, e, b]] - ch[[e, be, b]] * ch[[a, e, c]])
        }),
        s_v: TensorBlock::from_fn(n, &[VU, VL, VL, VL], |i| {
            let (a, b, c, dd) = (i[0], i[1], i[2], i[3]);
            cv_v[c][[a, b, dd]] - cv_v[dd][[a, b, c]]
                + sum(n, |e| cv[[e, b, dd]] * cv[[a, e, c]] - cv[[e, b, c]] * cv[[a, e, dd]])
        }),
    })
}

/// Natural-connection curvature in terms of the contortion and the canonical torsion.
pub fn natural_curvature_formula(space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<CurvatureBundle> {
    space.check_point(p)?;
    let n = space.n;
    let fj = FrameJet::new(space, p);
    let t = torsion_from(&ConnKind::Canonical.from_jet(&fj), &fj);
    let g = contortion_from_jet(&fj);
    let (hh, vh, hv, vv) = (&g.hh, &g.vh, &g.hv, &g.vv);
    let (lam, r, cc, pt, tv) = (&t.lam, &t.rnl, &t.chv, &t.p, &t.tv);
    let q = Quantity::Contortion;
    let hh_h = hd(q(ContortionBlock::Hh), space, p);
    let vh_h = hd(q(ContortionBlock::Vh), space, p);
    let hv_h = hd(q(ContortionBlock::Hv), space, p);
    let vv_h = hd(q(ContortionBlock::Vv), space, p);
    let hh_v = vd(q(ContortionBlock::Hh), space, p);
    let vh_v = vd(q(ContortionBlock::Vh), space, p);
    let hv_v = vd(q(ContortionBlock::Hv), space, p);
    let vv_v = vd(q(ContortionBlock::Vv), space, p);

    Ok(CurvatureBundle {
        r_hh: TensorBlock::from_fn(n, &[HU, HL, HL, HL], |i| {
            let (a, b, m, v) = (i[0], i[1], i[2], i[3]);
            hh_h[[a, b, m, v]] - hh_h[[a, b, v, m]]
                + sum(n, |e| hh[[e, b, v]] * hh[[a, e, m]] - hh[[e, b, m]] * hh[[a, e, v]])
                - sum(n, |e| hh[[a, b, e]] * lam[[e, v, m]])
                - sum(n, |e| hv[[a, b, e]] * r[[e, v, m]])
        }),
        r_vh: TensorBlock::from_fn(n, &[VU, VL, HL, HL], |i| {
            let (a, b, m, v) = (i[0], i[1], i[2], i[3]);
            vh_h[[a, b, m, v]] - vh_h[[a, b, v, m]]
                + sum(n, |e| vh[[e, b, v]] * vh[[a, e, m]] - vh[[e, b, m]] * vh[[a, e, v]])
                - sum(n, |e| vh[[a, b, e]] * lam[[e, v, m]])
                - sum(n, |e| vv[[a, b, e]] * r[[e, v, m]])
        }),
        p_h: TensorBlock::from_fn(n, &[HU, HL, HL, VL], |i| {
            let (a, b, v, c) = (i[0], i[1], i[2], i[3]);
            hv_h[[a, b, c, v]] - hh_v[[a, b, v, c]]
                + sum(n, |e| hh[[e, b, v]] * hv[[a, e, c]] - hv[[e, b, c]] * hh[[a, e, v]])
                - sum(n, |e| hh[[a, b, e]] * cc[[e, v, c]])
                - sum(n, |e| hv[[a, b, e]] * pt[[e, v, c]])
        }),
        p_v: TensorBlock::from_fn(n, &[VU, VL, HL, VL], |i| {
            let (a, b, v, c) = (i[0], i[1], i[2], i[3]);
            vv_h[[a, b, c, v]] - vh_v[[a, b, v, c]]
                + sum(n, |e| vh[[e, b, v]] * vv[[a, e, c]] - vv[[e, b, c]] * vh[[a, e, v]])
                - sum(n, |e| vh[[a, b, e]] * cc[[e, v, c]])
                - sum(n, |e| vv[[a, b, e]] * pt[[e, v, c]])
        }),
        s_h: TensorBlock::from_fn(n, &[HU, HL, VL, VL], |i| {
            let (a, be, b, c) = (i[0], i[1], i[2], i[3]);
            hv_v[[a, be, b, c]] - hv_v[[a, be, c, b]]
                + sum(n, |e| hv[[e, be, c]] * hv[[a, e, b]] - hv[[e, be, b]] * hv[[a, e, c]])
                - sum(n, |e| hv[[a, be, e]] * tv[[e, c, b]])
        }),
        s_v: TensorBlock::from_fn(n, &[VU, VL, VL, VL], |i| {
            let (a, b, c, d) = (i[0], i[1], i[2], i[3]);
            vv_v[[a, b, c, d]] - vv_v[[a, b, d, c]]
                + sum(n, |e| vv[[e, b, d]] * vv[[a, e, c]] - vv[[e, b, c]] * vv[[a, e, d]])
                - sum(n, |e| vv[[a, b, e]] * tv[[e, d, c]])
        }),
    })
}

/// Dual-connection curvature from the canonical torsion.
pub fn dual_curvature_formula(space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<CurvatureBundle> {
    space.check_point(p)?;
    let n = space.n;
    let fj = FrameJet::new(space, p);
    let t = torsion_from(&ConnKind::Canonical.from_jet(&fj), &fj);
    let (lam, r, cc, pt, tv) = (&t.lam, &t.rnl, &t.chv, &t.p, &t.tv);
    let k = ConnKind::Canonical;
    let lam_h = hd(Quantity::Torsion(k, TorsionBlock::Lam), space, p);
    let lam_v = vd(Quantity::Torsion(k, TorsionBlock::Lam), space, p);
    let t_h = hd(Quantity::Torsion(k, TorsionBlock::T), space, p);
    let t_v = vd(Quantity::Torsion(k, TorsionBlock::T), space, p);
    let mut out = CurvatureBundle::zeros(n);
    out.r_hh = TensorBlock::from_fn(n, &[HU, HL, HL, HL], |i| {
        let (a, b, v, m) = (i[0], i[1], i[2], i[3]);
        lam_h[[a, m, v, b]]
            + sum(n, |e| cyclic(b, m, v, |x, y, z| cc[[a, x, e]] * r[[e, y, z]]))
    });
    out.r_vh = TensorBlock::from_fn(n, &[VU, VL, HL, HL], |i| {
        let (a, b, v, m) = (i[0], i[1], i[2], i[3]);
        sum(n, |d| r[[d, m, v]] * tv[[a, d, b]])
    });
    out.p_h = TensorBlock::from_fn(n, &[HU, HL, HL, VL], |i| {
        let (a, b, m, c) = (i[0], i[1], i[2], i[3]);
        lam_v[[a, m, b, c]] + sum(n, |e| lam[[a, e, b]] * cc[[e, m, c]])
    });
    out.p_v = TensorBlock::from_fn(n, &[VU, VL, HL, VL], |i| {
        let (a, b, m, c) = (i[0], i[1], i[2], i[3]);
        t_h[[a, b, c, m]] + sum(n, |d| tv[[a, d, b]] * pt[[d, m, c]])
    });
    out.s_v = TensorBlock::from_fn(n, &[VU, VL, VL, VL], |i| {
        let (a, b, c, d) = (i[0], i[1], i[2], i[3]);
        t_v[[a, d, c, b]]
    });
    Ok(out)
}

/// Symmetric-connection curvature: quarter/half forms for R_hh and S_v, half the dual elsewhere.
pub fn symmetric_curvature_formula(space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<CurvatureBundle> {
    let dual = dual_curvature_formula(space, p)?;
    let n = space.n;
    let fj = FrameJet::new(space, p);
    let t = torsion_from(&ConnKind::Canonical.from_jet(&fj), &fj);
    let (lam, tv) = (&t.lam, &t.tv);
    let k = ConnKind::Canonical;
    let lam_h = hd(Quantity::Torsion(k, TorsionBlock::Lam), space, p);
    let t_v = vd(Quantity::Torsion(k, TorsionBlock::T), space, p);
    Ok(CurvatureBundle {
        r_hh: TensorBlock::from_fn(n, &[HU, HL, HL, HL], |i| {
            let (a, b, v, m) = (i[0], i[1], i[2], i[3]);
            0.5 * (lam_h[[a, b, v, m]] - lam_h[[a, b, m, v]])
                + 0.25 * sum(n, |e| lam[[e, b, v]] * lam[[a, m, e]] - lam[[e, b, m]] * lam[[a, v, e]])
                + 0.5 * sum(n, |e| lam[[e, v, m]] * lam[[a, b, e]])
        }),
        r_vh: dual.r_vh.scaled(0.5),
        p_h: dual.p_h.scaled(0.5),
        p_v: dual.p_v.scaled(0.5),
        s_h: dual.s_h.clone(),
        s_v: TensorBlock::from_fn(n, &[VU, VL, VL, VL], |i| {
            let (a, b, c, d) = (i[0], i[1], i[2], i[3]);
            0.5 * (t_v[[a, b, c, d]] - t_v[[a, b, d, c]])
                + 0.25 * sum(n, |e| tv[[e, b, c]] * tv[[a, d, e]] - tv[[e, b, d]] * tv[[a, c, e]])
                + 0.5 * sum(n, |e| tv[[e, d, c]] * tv[[a, e, b]])
        }),
    })
}

/// Closed-form curvature for `kind`; the canonical curvature is identically zero.
pub fn curvature_formula(kind: ConnKind, space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<CurvatureBundle> {
    match kind {
        ConnKind::Canonical => {
            space.check_point(p)?;
            Ok(CurvatureBundle::zeros(space.n))
        }
        ConnKind::Natural => natural_curvature_formula(space, p),
        ConnKind::Dual => dual_curvature_formula(space, p),
        ConnKind::Symmetric => symmetric_curvature_formula(space, p),
    }
}

/// R_{βμ}, 𝓡, P_{βc}, P_{bν}, S_{bc}, 𝓢.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureContractions {
    pub ric_h: TensorBlock<f64>,
    pub scalar_h: f64,
    pub p_hc: TensorBlock<f64>,
    pub p_vc: TensorBlock<f64>,
    pub ric_v: TensorBlock<f64>,
    pub scalar_v: f64,
}

impl CurvatureContractions {
    /// Max |difference| per field, in declaration order.
    pub fn diffs(&self, o: &Self) -> [f64; 6] {
        [
            self.ric_h.max_diff(&o.ric_h),
            (self.scalar_h - o.scalar_h).abs(),
            self.p_hc.max_diff(&o.p_hc),
            self.p_vc.max_diff(&o.p_vc),
            self.ric_v.max_diff(&o.ric_v),
            (self.scalar_v - o.scalar_v).abs(),
        ]
    }

    pub fn max_abs(&self) -> f64 {
        [self.ric_h.max_abs(), self.scalar_h.abs(), self.p_hc.max_abs(), self.p_vc.max_abs()]
            .into_iter()
            .chain([self.ric_v.max_abs(), self.scalar_v.abs()])
            .fold(0.0, f64::max)
    }
}

pub const CONTRACTION_NAMES: [&str; 6] = ["Ric_h", "scalar_h", "P_hc", "P_vc", "Ric_v", "scalar_v"];

/// Contractions by index tracing of a bundle.
pub fn contract_bundle(b: &CurvatureBundle, space: &SpaceDefinition, p: &SpacePoint<f64>) -> CurvatureContractions {
    let n = space.n;
    let f = space.frame(p);
    let g = metric_of(&crate::space::coframe_of(&f), &f);
    let ric_h = TensorBlock::from_fn(n, &[HL, HL], |i| sum(n, |a| b.r_hh[[a, i[0], i[1], a]]));
    let ric_v = TensorBlock::from_fn(n, &[VL, VL], |i| sum(n, |d| b.s_v[[d, i[0], i[1], d]]));
    CurvatureContractions {
        scalar_h: sum2(n, |x, y| g.gh_inv[(x, y)] * ric_h[[x, y]]),
        scalar_v: sum2(n, |x, y| g.gv_inv[(x, y)] * ric_v[[x, y]]),
        ric_h,
        ric_v,
        p_hc: TensorBlock::from_fn(n, &[HL, VL], |i| -sum(n, |a| b.p_h[[a, i[0], a, i[1]]])),
        p_vc: TensorBlock::from_fn(n, &[VL, HL], |i| sum(n, |d| b.p_v[[d, i[0], i[1], d]])),
    }
}

/// Closed contraction formulas in terms of torsion, contortion and the basic vector.
pub fn contraction_formula(kind: ConnKind, space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<CurvatureContractions> {
    space.check_point(p)?;
    let n = space.n;
    let fj = FrameJet::new(space, p);
    let t = torsion_from(&ConnKind::Canonical.from_jet(&fj), &fj);
    let bv = basic_vector_from_torsion(&t);
    let g = metric_of(&fj.coframe, &fj.frame);
    let (lam, r, cc, pt, tv) = (&t.lam, &t.rnl, &t.chv, &t.p, &t.tv);
    let (ch, cv) = (&bv.ch, &bv.cv);
    let ch_h = hd(Quantity::BasicH, space, p);
    let ch_v = vd(Quantity::BasicH, space, p);
    let cv_h = hd(Quantity::BasicV, space, p);
    let cv_v = vd(Quantity::BasicV, space, p);
    let div_ch = {
        let d = hd(Quantity::BasicHUp, space, p);
        sum(n, |m| d[[m, m]])
    };
    let div_cv = {
        let d = vd(Quantity::BasicVUp, space, p);
        sum(n, |m| d[[m, m]])
    };

    let dual = || CurvatureContractions {
        ric_h: TensorBlock::from_fn(n, &[HL, HL], |i| {
            let (b, v) = (i[0], i[1]);
            -ch_h[[v, b]]
                + sum2(n, |a, e| cc[[a, b, e]] * r[[e, a, v]] + cc[[a, v, e]] * r[[e, b, a]] + cc[[a, a, e]] * r[[e, v, b]])
        }),
        scalar_h: -div_ch,
        p_hc: TensorBlock::from_fn(n, &[HL, VL], |i| {
            let (b, c) = (i[0], i[1]);
            ch_v[[b, c]] + sum2(n, |a, e| lam[[a, b, e]] * cc[[e, a, c]])
        }),
        p_vc: TensorBlock::from_fn(n, &[VL, HL], |i| {
            let (b, m) = (i[0], i[1]);
            cv_h[[b, m]] + sum2(n, |a, d| tv[[a, d, b]] * pt[[d, m, a]])
        }),
        ric_v: TensorBlock::from_fn(n, &[VL, VL], |i| -cv_v[[i[1], i[0]]]),
        scalar_v: -div_cv,
    };

    Ok(match kind {
        ConnKind::Canonical => CurvatureContractions {
            ric_h: TensorBlock::zeros(n, &[HL, HL]),
            scalar_h: 0.0,
            p_hc: TensorBlock::zeros(n, &[HL, VL]),
            p_vc: TensorBlock::zeros(n, &[VL, HL]),
            ric_v: TensorBlock::zeros(n, &[VL, VL]),
            scalar_v: 0.0,
        },
        ConnKind::Dual => dual(),
        ConnKind::Symmetric => {
            let d = dual();
            let lam_up = |a: usize, b: usize, e: usize| sum(n, |m| g.gh_inv[(b, m)] * lam[[a, m, e]]);
            let t_up = |a: usize, b: usize, e: usize| sum(n, |c| g.gv_inv[(b, c)] * tv[[a, c, e]]);
            CurvatureContractions {
                ric_h: TensorBlock::from_fn(n, &[HL, HL], |i| {
                    let (b, v) = (i[0], i[1]);
                    0.5 * d.ric_h[[b, v]]
                        - 0.25 * (sum(n, |a| ch[[a]] * lam[[a, v, b]]) + sum2(n, |a, e| lam[[a, v, e]] * lam[[e, a, b]]))
                }),
                scalar_h: 0.5 * d.scalar_h
                    - 0.25 * sum(n, |e| sum2(n, |a, b| lam_up(a, b, e) * lam[[e, a, b]])),
                p_hc: d.p_hc.scaled(0.5),
                p_vc: d.p_vc.scaled(0.5),
                ric_v: TensorBlock::from_fn(n, &[VL, VL], |i| {
                    let (b, dd) = (i[0], i[1]);
                    0.5 * d.ric_v[[b, dd]]
                        - 0.25 * (sum(n, |a| cv[[a]] * tv[[a, dd, b]]) + sum2(n, |a, e| tv[[a, dd, e]] * tv[[e, a, b]]))
                }),
                scalar_v: 0.5 * d.scalar_v - 0.25 * sum(n, |e| sum2(n, |a, b| t_up(a, b, e) * tv[[e, a, b]])),
            }
        }
        ConnKind::Natural => {
            let gm = contortion_from_jet(&fj);
            let (hh, vh, hv, vv) = (&gm.hh, &gm.vh, &gm.hv, &gm.vv);
            let q = Quantity::Contortion;
            let hh_h = hd(q(ContortionBlock::Hh), space, p);
            let hv_h = hd(q(ContortionBlock::Hv), space, p);
            let vh_v = vd(q(ContortionBlock::Vh), space, p);
            let vv_v = vd(q(ContortionBlock::Vv), space, p);
            let om_h = Quantity::OmegaTraceH.eval(space, p);
            let om_v = Quantity::OmegaTraceV.eval(space, p);
            let div_om_h = {
                let d = hd(Quantity::OmegaTraceH, space, p);
                sum(n, |a| d[[a, a]])
            };
            let div_om_v = {
                let d = vd(Quantity::OmegaTraceV, space, p);
                sum(n, |a| d[[a, a]])
            };
            let up_h = |t: &TensorBlock<f64>, a: usize, m: usize, e: usize| {
                sum(n, |b| g.gh_inv[(m, b)] * t[[a, b, e]])
            };
            let up_v = |a: usize, d: usize, c: usize| sum(n, |b| g.gv_inv[(d, b)] * vv[[a, b, c]]);
            CurvatureContractions {
                ric_h: TensorBlock::from_fn(n, &[HL, HL], |i| {
                    let (b, m) = (i[0], i[1]);
                    sum(n, |a| hh_h[[a, b, m, a]]) - ch_h[[b, m]] - sum(n, |e| ch[[e]] * hh[[e, b, m]])
                        + sum2(n, |a, e| hh[[a, b, e]] * hh[[e, m, a]])
                        - sum2(n, |a, d| hv[[a, b, d]] * r[[d, a, m]])
                }),
                scalar_h: 0.5 * (div_om_h - sum(n, |a| ch[[a]] * om_h[[a]])) - div_ch
                    + sum(n, |e| sum2(n, |a, m| up_h(hh, a, m, e) * hh[[e, m, a]]))
                    - sum(n, |d| sum2(n, |a, m| up_h(hv, a, m, d) * r[[d, a, m]])),
                p_hc: TensorBlock::from_fn(n, &[HL, VL], |i| {
                    let (b, c) = (i[0], i[1]);
                    ch_v[[b, c]] - sum(n, |a| hv_h[[a, b, c, a]]) + sum(n, |e| ch[[e]] * hv[[e, b, c]])
                        + sum2(n, |a, e| hh[[a, b, e]] * (cc[[e, a, c]] - hv[[e, a, c]]))
                        + sum2(n, |a, d| hv[[a, b, d]] * pt[[d, a, c]])
                }),
                p_vc: TensorBlock::from_fn(n, &[VL, HL], |i| {
                    let (b, v) = (i[0], i[1]);
                    cv_h[[b, v]] - sum(n, |d| vh_v[[d, b, v, d]]) + sum(n, |d| cv[[d]] * vh[[d, b, v]])
                        - sum2(n, |d, e| vv[[d, b, e]] * vh[[e, d, v]])
                        - sum2(n, |d, e| vh[[d, b, e]] * cc[[e, v, d]])
                        - sum2(n, |e, d| vv[[e, b, d]] * pt[[d, v, e]])
                }),
                ric_v: TensorBlock::from_fn(n, &[VL, VL], |i| {
                    let (b, c) = (i[0], i[1]);
                    sum(n, |d| vv_v[[d, b, c, d]]) - cv_v[[b, c]] - sum(n, |d| cv[[d]] * vv[[d, b, c]])
                        + sum2(n, |d, e| vv[[d, b, e]] * vv[[e, c, d]])
                }),
                scalar_v: 0.5 * (div_om_v - sum(n, |a| cv[[a]] * om_v[[a]])) - div_cv
                    + sum(n, |c| sum2(n, |a, d| up_v(a, d, c) * vv[[c, d, a]])),
            }
        }
    })
}

/// Both contraction routes; the traced route first.
pub fn contract(kind: ConnKind, space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<(CurvatureContractions, CurvatureContractions)> {
    let b = curvature_direct(kind, space, p)?;
    Ok((contract_bundle(&b, space, p), contraction_formula(kind, space, p)?))
}

/// Max-abs residuals of the cyclic Λ identity, the cyclic T identity and their contracted forms.
#[derive(Clone, Debug, PartialEq)]
pub struct BianchiResiduals {
    pub lambda_cyclic: f64,
    pub torsion_cyclic: f64,
    pub lambda_contracted: f64,
    pub torsion_contracted: f64,
    /// Scale of each identity: the cyclic sum of its derivative term alone, or the traced term.
    pub scales: [f64; 4],
}

impl BianchiResiduals {
    pub fn values(&self) -> [f64; 4] {
        [self.lambda_cyclic, self.torsion_cyclic, self.lambda_contracted, self.torsion_contracted]
    }
}

pub fn bianchi_residuals(space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<BianchiResiduals> {
    space.check_point(p)?;
    let n = space.n;
    let fj = FrameJet::new(space, p);
    let t = torsion_from(&ConnKind::Canonical.from_jet(&fj), &fj);
    let bv = basic_vector_from_torsion(&t);
    let (lam, r, cc, tv) = (&t.lam, &t.rnl, &t.chv, &t.tv);
    let k = ConnKind::Canonical;
    let lam_h = hd(Quantity::Torsion(k, TorsionBlock::Lam), space, p);
    let t_v = vd(Quantity::Torsion(k, TorsionBlock::T), space, p);
    let ch_h = hd(Quantity::BasicH, space, p);
    let cv_v = vd(Quantity::BasicV, space, p);

    let mut out = [0.0f64; 4];
    let mut scales = [0.0f64; 4];
    let mut track = |k: usize, v: f64, s: f64| {
        out[k] = out[k].max(v.abs());
        scales[k] = scales[k].max(s.abs());
    };
    for a in 0..n {
        for b in 0..n {
            for m in 0..n {
                for v in 0..n {
                    let x = cyclic(b, m, v, |b, m, v| {
                        lam_h[[a, b, m, v]]
                            + sum(n, |e| lam[[e, m, v]] * lam[[a, b, e]])
                            + sum(n, |d| r[[d, b, m]] * cc[[a, v, d]])
                    });
                    track(0, x, cyclic(b, m, v, |b, m, v| lam_h[[a, b, m, v]]));
                    let y = cyclic(b, m, v, |b, c, d| t_v[[a, b, c, d]] + sum(n, |e| tv[[e, c, d]] * tv[[a, b, e]]));
                    track(1, y, cyclic(b, m, v, |b, c, d| t_v[[a, b, c, d]]));
                }
            }
        }
    }
    for b in 0..n {
        for m in 0..n {
            let lhs = sum(n, |v| lam_h[[v, b, m, v]]);
            let rhs = ch_h[[b, m]] - ch_h[[m, b]] + sum(n, |e| bv.ch[[e]] * lam[[e, b, m]])
                - sum2(n, |v, d| r[[d, b, m]] * cc[[v, v, d]] + r[[d, m, v]] * cc[[v, b, d]] + r[[d, v, b]] * cc[[v, m, d]]);
            track(2, lhs - rhs, lhs);
            let lhs = sum(n, |d| t_v[[d, b, m, d]]);
            let rhs = cv_v[[b, m]] - cv_v[[m, b]] + sum(n, |d| bv.cv[[d]] * tv[[d, b, m]]);
            track(3, lhs - rhs, lhs);
        }
    }
    Ok(BianchiResiduals {
        lambda_cyclic: out[0],
        torsion_cyclic: out[1],
        lambda_contracted: out[2],
        torsion_contracted: out[3],
        scales,
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
    fn canonical_curvature_vanishes() {
        let (s, p) = at();
        let b = curvature_direct(ConnKind::Canonical, &s, &p).unwrap();
        assert!(b.max_abs() < 1e-9, "{:?}", b.blocks().map(|x| x.max_abs()));
    }

    #[test]
    fn closed_forms_match_direct() {
        let (s, p) = at();
        for k in ConnKind::DERIVED {
            let a = curvature_direct(k, &s, &p).unwrap();
            let b = curvature_formula(k, &s, &p).unwrap();
            let d = a.block_diffs(&b);
            assert!(d.iter().all(|v| *v < 1e-8), "{k:?} {d:?}");
            assert!(a.max_abs() > 1e-3);
        }
    }

    #[test]
    fn contractions_match() {
        let (s, p) = at();
        for k in ConnKind::ALL {
            let (a, b) = contract(k, &s, &p).unwrap();
            let d = a.diffs(&b);
            assert!(d.iter().all(|v| *v < 1e-8), "{k:?} {d:?}");
        }
    }

    #[test]
    fn bianchi() {
        let (s, p) = at();
        let r = bianchi_residuals(&s, &p).unwrap();
        assert!(r.values().iter().all(|v| *v < 1e-8), "{r:?}");
        // the uncontracted identities are vacuous at n = 2
        assert_eq!(&r.scales[..2], &[0.0, 0.0]);
        assert!(r.scales[2..].iter().all(|v| *v > 1e-4), "{r:?}");
        let s = crate::space::auxiliary_space("generic3").unwrap();
        let p = SpacePoint::new(vec![0.3, -0.2, 0.1], vec![0.7, 0.9, -0.4]).unwrap();
        let r = bianchi_residuals(&s, &p).unwrap();
        assert!(r.values().iter().all(|v| *v < 1e-8), "{r:?}");
        assert!(r.scales.iter().all(|v| *v > 1e-4), "{r:?}");
    }
}
