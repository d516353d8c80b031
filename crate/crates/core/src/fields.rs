//! Named d-tensor fields that can be evaluated and covariantly differentiated.

use crate::calculus::{FrameJet, TensorField};
use crate::connections::{basic_vector_from_torsion, contortion_from_jet, torsion_from, ConnKind};
use crate::metric::metric_of;
use crate::scalar::Scalar;
use crate::space::{coframe_of, SpaceDefinition, SpacePoint};
use crate::tensor::{Slot, TensorBlock, HL, HU, MESH, VL, VU};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConnBlock {
    /// Γ^α_{μν}
    Gh,
    /// Γ^a_{bν}
    Gv,
    /// C^α_{μc}
    Ch,
    /// C^a_{bc}
    Cv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TorsionBlock {
    Lam,
    R,
    C,
    P,
    T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ContortionBlock {
    Hh,
    Vh,
    Hv,
    Vv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantity {
    /// λ_i^α, `[i][α]`
    FrameH,
    /// λ_i^a
    FrameV,
    /// λ_i_α
    CoframeH,
    /// λ_i_a
    CoframeV,
    /// y^a
    Liouville,
    MetricH,
    MetricV,
    MetricHInv,
    MetricVInv,
    /// Coefficients of a connection. Not a tensor; used only through plain adapted partials.
    Conn(ConnKind, ConnBlock),
    Torsion(ConnKind, TorsionBlock),
    Contortion(ContortionBlock),
    /// C_μ
    BasicH,
    /// C_a
    BasicV,
    /// C^μ
    BasicHUp,
    /// C^a
    BasicVUp,
    /// Ω^{αμ}_μ = g^{μβ}(γ^α_{βμ} + γ^α_{μβ})
    OmegaTraceH,
    /// Ω^{ad}_d
    OmegaTraceV,
}

impl Quantity {
    pub fn name(&self) -> String {
        match self {
            Quantity::FrameH => "frame_h".into(),
            Quantity::FrameV => "frame_v".into(),
            Quantity::CoframeH => "coframe_h".into(),
            Quantity::CoframeV => "coframe_v".into(),
            Quantity::Liouville => "liouville".into(),
            Quantity::MetricH => "metric_h".into(),
            Quantity::MetricV => "metric_v".into(),
            Quantity::MetricHInv => "metric_h_inv".into(),
            Quantity::MetricVInv => "metric_v_inv".into(),
            Quantity::Conn(k, b) => format!("{}.{:?}", k.name(), b).to_lowercase(),
            Quantity::Torsion(k, b) => format!("{}.torsion.{:?}", k.name(), b).to_lowercase(),
            Quantity::Contortion(b) => format!("contortion.{b:?}").to_lowercase(),
            Quantity::BasicH => "basic_h".into(),
            Quantity::BasicV => "basic_v".into(),
            Quantity::BasicHUp => "basic_h_up".into(),
            Quantity::BasicVUp => "basic_v_up".into(),
            Quantity::OmegaTraceH => "omega_trace_h".into(),
            Quantity::OmegaTraceV => "omega_trace_v".into(),
        }
    }
}

fn raise<S: Scalar>(inv: &crate::linalg::Mat<S>, v: &TensorBlock<S>) -> TensorBlock<S> {
    let n = v.n;
    let up = if v.sig[0] == HL { HU } else { VU };
    TensorBlock::from_fn(n, &[up], |i| (0..n).fold(S::zero(), |s, b| s + inv[(i[0], b)] * v[[b]]))
}

impl TensorField for Quantity {
    fn signature(&self, _n: usize) -> Vec<Slot> {
        match self {
            Quantity::FrameH => vec![MESH, HU],
            Quantity::FrameV => vec![MESH, VU],
            Quantity::CoframeH => vec![MESH, HL],
            Quantity::CoframeV => vec![MESH, VL],
            Quantity::Liouville => vec![VU],
            Quantity::MetricH => vec![HL, HL],
            Quantity::MetricV => vec![VL, VL],
            Quantity::MetricHInv => vec![HU, HU],
            Quantity::MetricVInv => vec![VU, VU],
            Quantity::Conn(_, b) => match b {
                ConnBlock::Gh => vec![HU, HL, HL],
                ConnBlock::Gv => vec![VU, VL, HL],
                ConnBlock::Ch => vec![HU, HL, VL],
                ConnBlock::Cv => vec![VU, VL, VL],
            },
            Quantity::Torsion(_, b) => match b {
                TorsionBlock::Lam => vec![HU, HL, HL],
                TorsionBlock::R => vec![VU, HL, HL],
                TorsionBlock::C => vec![HU, HL, VL],
                TorsionBlock::P => vec![VU, HL, VL],
                TorsionBlock::T => vec![VU, VL, VL],
            },
            Quantity::Contortion(b) => match b {
                ContortionBlock::Hh => vec![HU, HL, HL],
                ContortionBlock::Vh => vec![VU, VL, HL],
                ContortionBlock::Hv => vec![HU, HL, VL],
                ContortionBlock::Vv => vec![VU, VL, VL],
            },
            Quantity::BasicH => vec![HL],
            Quantity::BasicV => vec![VL],
            Quantity::BasicHUp | Quantity::OmegaTraceH => vec![HU],
            Quantity::BasicVUp | Quantity::OmegaTraceV => vec![VU],
        }
    }

    fn eval<S: Scalar>(&self, space: &SpaceDefinition, p: &SpacePoint<S>) -> TensorBlock<S> {
        let n = space.n;
        let sig = self.signature(n);
        let mat = |m: &crate::linalg::Mat<S>| TensorBlock::from_fn(n, &sig, |i| m[(i[0], i[1])]);
        match *self {
            Quantity::FrameH => mat(&space.frame(p).lh),
            Quantity::FrameV => mat(&space.frame(p).lv),
            Quantity::CoframeH => mat(&coframe_of(&space.frame(p)).ch),
            Quantity::CoframeV => mat(&coframe_of(&space.frame(p)).cv),
            Quantity::Liouville => TensorBlock::from_fn(n, &sig, |i| p.y[i[0]]),
            Quantity::MetricH | Quantity::MetricV | Quantity::MetricHInv | Quantity::MetricVInv => {
                let f = space.frame(p);
                let g = metric_of(&coframe_of(&f), &f);
                mat(match self {
                    Quantity::MetricH => &g.gh,
                    Quantity::MetricV => &g.gv,
                    Quantity::MetricHInv => &g.gh_inv,
                    _ => &g.gv_inv,
                })
            }
            Quantity::Conn(k, b) => {
                let d = k.coefficients(space, p);
                match b {
                    ConnBlock::Gh => d.gh,
                    ConnBlock::Gv => d.gv,
                    ConnBlock::Ch => d.ch,
                    ConnBlock::Cv => d.cv,
                }
            }
            Quantity::Torsion(k, b) => {
                let fj = FrameJet::new(space, p);
                let t = torsion_from(&k.from_jet(&fj), &fj);
                match b {
                    TorsionBlock::Lam => t.lam,
                    TorsionBlock::R => t.rnl,
                    TorsionBlock::C => t.chv,
                    TorsionBlock::P => t.p,
                    TorsionBlock::T => t.tv,
                }
            }
            Quantity::Contortion(b) => {
                let g = contortion_from_jet(&FrameJet::new(space, p));
                match b {
                    ContortionBlock::Hh => g.hh,
                    ContortionBlock::Vh => g.vh,
                    ContortionBlock::Hv => g.hv,
                    ContortionBlock::Vv => g.vv,
                }
            }
            Quantity::BasicH | Quantity::BasicV | Quantity::BasicHUp | Quantity::BasicVUp => {
                let fj = FrameJet::new(space, p);
                let c = basic_vector_from_torsion(&torsion_from(&ConnKind::Canonical.from_jet(&fj), &fj));
                let g = metric_of(&fj.coframe, &fj.frame);
                match self {
                    Quantity::BasicH => c.ch,
                    Quantity::BasicV => c.cv,
                    Quantity::BasicHUp => raise(&g.gh_inv, &c.ch),
                    _ => raise(&g.gv_inv, &c.cv),
                }
            }
            Quantity::OmegaTraceH | Quantity::OmegaTraceV => {
                let fj = FrameJet::new(space, p);
                let gm = contortion_from_jet(&fj);
                let g = metric_of(&fj.coframe, &fj.frame);
                let (t, inv) = if *self == Quantity::OmegaTraceH { (&gm.hh, &g.gh_inv) } else { (&gm.vv, &g.gv_inv) };
                TensorBlock::from_fn(n, &sig, |i| {
                    let mut s = S::zero();
                    for b in 0..n {
                        for m in 0..n {
                            s += inv[(m, b)] * (t[[i[0], b, m]] + t[[i[0], m, b]]);
                        }
                    }
                    s
                })
            }
        }
    }
}
