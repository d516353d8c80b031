//! Cartan-type, Berwald-type and CB-condition residuals, classification, and the
//! consequence suites of each regime.

use crate::calculus::{adapted_partials, hcov, vcov, FrameJet, TensorField};
use crate::connections::{contortion_from_jet, torsion_from, ConnKind, ContortionBundle, TorsionBundle};
use crate::curvature::{curvature_direct, CurvatureBundle, CURVATURE_NAMES};
use crate::error::{GeomError, Result};
use crate::fields::{ConnBlock, ContortionBlock, Quantity, TorsionBlock};
use crate::linalg::Mat;
use crate::metric::metric_of;
use crate::report::{CheckRecord, CheckSet};
use crate::space::{invert_frame, SpaceDefinition, SpacePoint};
use crate::tensor::{diff_and_scale, TensorBlock, HL, HU};
use crate::tolerances::{Tolerances, REGIME_FAIL};
use crate::wtensor::{curvature_partner, w_cyclic_residual, w_via_commutator, WBundle, W_NAMES};
use serde::Serialize;
use std::collections::BTreeMap;

fn sum(n: usize, f: impl Fn(usize) -> f64) -> f64 {
    (0..n).map(f).sum()
}

fn kron_diff(t: &TensorBlock<f64>) -> f64 {
    let n = t.n;
    let mut m = 0.0f64;
    for a in 0..n {
        for c in 0..n {
            let d = if a == c { 1.0 } else { 0.0 };
            m = m.max((t[[a, c]] - d).abs());
        }
    }
    m
}

/// max |y^a_{|μ}|, max |y^a_{||c} − δ^a_c| under `kind`.
pub fn cartan_residual_for(kind: ConnKind, space: &SpaceDefinition, p: &SpacePoint<f64>) -> [f64; 2] {
    let h = hcov(Quantity::Liouville, kind).eval(space, p);
    let v = vcov(Quantity::Liouville, kind).eval(space, p);
    [h.max_abs(), kron_diff(&v)]
}

pub fn cartan_residual(space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<[f64; 2]> {
    space.check_point(p)?;
    Ok(cartan_residual_for(ConnKind::Canonical, space, p))
}

/// max |∂̇_b N^a_μ − Γ^a_{bμ}|, max |C^α_{μc}| under `kind`.
pub fn berwald_residual_for(kind: ConnKind, space: &SpaceDefinition, p: &SpacePoint<f64>) -> [f64; 2] {
    let fj = FrameJet::new(space, p);
    let d = kind.from_jet(&fj);
    [fj.dot_nlc().max_diff(&d.gv), d.ch.max_abs()]
}

pub fn berwald_residual(space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<[f64; 2]> {
    space.check_point(p)?;
    Ok(berwald_residual_for(ConnKind::Canonical, space, p))
}

/// N^a_μ = y^b λ_i^a ∂_μ λ_i_b.
pub fn induced_nlc(space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<Mat<f64>> {
    space.check_point(p)?;
    invert_frame(&space.frame(p))?;
    let fj = FrameJet::new(space, p);
    Ok(induced_from_jet(&fj, p))
}

fn induced_from_jet(fj: &FrameJet<f64>, p: &SpacePoint<f64>) -> Mat<f64> {
    let n = fj.n;
    Mat::from_fn(n, |a, m| {
        sum(n, |b| p.y[b] * sum(n, |i| fj.frame.lv[(i, a)] * fj.d_cv[m][(i, b)]))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RegimeLabel {
    Generic,
    Cartan,
    Berwald,
    Cb,
    Indeterminate,
}

impl RegimeLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegimeLabel::Generic => "generic",
            RegimeLabel::Cartan => "cartan",
            RegimeLabel::Berwald => "berwald",
            RegimeLabel::Cb => "cb",
            RegimeLabel::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub space: String,
    pub label: RegimeLabel,
    /// max over samples: cartan.horizontal, cartan.vertical, berwald.nlc, berwald.mixed
    pub residuals: BTreeMap<String, f64>,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub fail_threshold: f64,
    /// Cartan type with vanishing C^α_{μc} forces Berwald type.
    pub cartan_mixed_implies_berwald: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Verdict {
    Pass,
    Fail,
    Gray,
}

fn verdict(rs: &[f64], tol: f64) -> Verdict {
    if rs.iter().all(|r| *r < tol) {
        Verdict::Pass
    } else if rs.iter().any(|r| !(*r <= REGIME_FAIL)) {
        Verdict::Fail
    } else {
        Verdict::Gray
    }
}

pub fn classify(space: &SpaceDefinition, samples: usize, seed: u64, tol: f64) -> Result<ClassificationReport> {
    if samples == 0 {
        return Err(GeomError::InvalidArgument("sample count must be at least 1".into()));
    }
    if !(tol > 0.0) {
        return Err(GeomError::InvalidArgument("tolerance must be positive".into()));
    }
    let mut r = [0.0f64; 4];
    for p in space.sample(samples, seed) {
        let c = cartan_residual(space, &p)?;
        let b = berwald_residual(space, &p)?;
        for (k, v) in c.into_iter().chain(b).enumerate() {
            r[k] = if v.is_nan() { f64::NAN } else { r[k].max(v) };
        }
    }
    let cartan = verdict(&r[..2], tol);
    let berwald = verdict(&r[2..], tol);
    let label = match (cartan, berwald) {
        (Verdict::Gray, _) | (_, Verdict::Gray) => RegimeLabel::Indeterminate,
        (Verdict::Pass, Verdict::Pass) => RegimeLabel::Cb,
        (Verdict::Pass, Verdict::Fail) => RegimeLabel::Cartan,
        (Verdict::Fail, Verdict::Pass) => RegimeLabel::Berwald,
        (Verdict::Fail, Verdict::Fail) => RegimeLabel::Generic,
    };
    let implication = !(cartan == Verdict::Pass && r[3] < tol) || berwald == Verdict::Pass;
    let names = ["cartan.horizontal", "cartan.vertical", "berwald.nlc", "berwald.mixed"];
    Ok(ClassificationReport {
        space: space.name.clone(),
        label,
        residuals: names.iter().zip(r).map(|(k, v)| (k.to_string(), v)).collect(),
        samples,
        seed,
        tolerance: tol,
        fail_threshold: REGIME_FAIL,
        cartan_mixed_implies_berwald: implication,
    })
}

/// Everything the consequence suites need at one point.
struct PointData {
    n: usize,
    fj: FrameJet<f64>,
    /// largest first-order frame/N datum; zero on flat spaces
    activity: f64,
    tor: BTreeMap<ConnKind, TorsionBundle<f64>>,
    gam: ContortionBundle<f64>,
    curv: BTreeMap<ConnKind, CurvatureBundle>,
    w: BTreeMap<ConnKind, WBundle>,
    lam_h: TensorBlock<f64>,
    lam_v: TensorBlock<f64>,
    t_v: TensorBlock<f64>,
}

impl PointData {
    fn new(space: &SpaceDefinition, p: &SpacePoint<f64>) -> Result<Self> {
        space.check_point(p)?;
        let fj = FrameJet::new(space, p);
        let activity = fj.activity();
        let mut tor = BTreeMap::new();
        let mut curv = BTreeMap::new();
        let mut w = BTreeMap::new();
        for k in ConnKind::ALL {
            tor.insert(k, torsion_from(&k.from_jet(&fj), &fj));
            curv.insert(k, curvature_direct(k, space, p)?);
            w.insert(k, w_via_commutator(k, space, p)?);
        }
        let c = ConnKind::Canonical;
        Ok(PointData {
            n: space.n,
            gam: contortion_from_jet(&fj),
            fj,
            activity,
            tor,
            curv,
            w,
            lam_h: hcov(Quantity::Torsion(c, TorsionBlock::Lam), c).eval(space, p),
            lam_v: vcov(Quantity::Torsion(c, TorsionBlock::Lam), c).eval(space, p),
            t_v: vcov(Quantity::Torsion(c, TorsionBlock::T), c).eval(space, p),
        })
    }

    fn tor(&self, k: ConnKind) -> &TorsionBundle<f64> {
        &self.tor[&k]
    }
    fn curv(&self, k: ConnKind) -> &CurvatureBundle {
        &self.curv[&k]
    }
    fn w(&self, k: ConnKind) -> &WBundle {
        &self.w[&k]
    }
    fn canon(&self) -> &TorsionBundle<f64> {
        self.tor(ConnKind::Canonical)
    }

    /// W̃^α_{βνμ} = Λ^α_{νμ|β} − Λ^ε_{νμ}Λ^α_{βε} (the C R tail dropped).
    fn dual_w_hhh_reduced(&self) -> TensorBlock<f64> {
        let (n, lam) = (self.n, &self.canon().lam);
        TensorBlock::from_fn(n, &[HU, HL, HL, HL], |i| {
            let (a, b, v, m) = (i[0], i[1], i[2], i[3]);
            self.lam_h[[a, v, m, b]] - sum(n, |e| lam[[e, v, m]] * lam[[a, b, e]])
        })
    }

    /// Λ^α_{νμ|β} rearranged to `[α][β][μ][ν]`, the R̃ slot order.
    fn lam_h_as_curvature(&self) -> TensorBlock<f64> {
        TensorBlock::from_fn(self.n, &[HU, HL, HL, HL], |i| self.lam_h[[i[0], i[3], i[2], i[1]]])
    }
}

fn max_of(bs: &[&TensorBlock<f64>]) -> f64 {
    bs.iter().map(|b| b.max_abs()).fold(0.0, f64::max)
}

/// Record "x = 0" with the point's activity as scale.
fn zero(set: &mut CheckSet, pd: &PointData, id: &str, anchor: &str, v: f64, tol: f64) {
    set.residual(id, anchor, v, pd.activity.max(v), tol);
}

fn equal(set: &mut CheckSet, id: &str, anchor: &str, a: &TensorBlock<f64>, b: &TensorBlock<f64>, tol: f64) {
    let (d, s) = diff_and_scale(a, b);
    set.residual(id, anchor, d, s, tol);
}

/// max over the y-slots of |∂̇_c q|.
fn y_variation(q: Quantity, space: &SpaceDefinition, p: &SpacePoint<f64>) -> (f64, f64) {
    let (base, ds) = adapted_partials(&q, space, p, false);
    (ds.iter().map(|d| d.max_abs()).fold(0.0, f64::max), base.max_abs())
}

/// Zero/nonzero pattern of a regime table: torsion (Λ, R, C, P, T) and curvature blocks per connection.
pub struct TableMask {
    pub torsion: [(ConnKind, [bool; 5]); 4],
    pub curvature: [(ConnKind, [bool; 6]); 4],
}

use ConnKind::{Canonical as CAN, Dual as DUA, Natural as NAT, Symmetric as SYM};

pub const CARTAN_TABLE: TableMask = TableMask {
    torsion: [
        (CAN, [true, false, true, false, false]),
        (DUA, [true, false, true, false, false]),
        (SYM, [false, false, true, false, false]),
        (NAT, [false, false, true, false, false]),
    ],
    curvature: [
        (CAN, [false; 6]),
        (DUA, [true, false, true, false, false, false]),
        (SYM, [true, false, true, false, false, false]),
        (NAT, [true, false, true, false, true, false]),
    ],
};

pub const BERWALD_TABLE: TableMask = TableMask {
    torsion: [
        (CAN, [true, true, false, false, true]),
        (DUA, [true, true, false, false, true]),
        (SYM, [false, true, false, false, false]),
        (NAT, [false, true, false, false, false]),
    ],
    curvature: [
        (CAN, [false; 6]),
        (DUA, [true, true, false, true, false, true]),
        (SYM, [true, true, false, true, false, true]),
        (NAT, [true, true, false, true, false, true]),
    ],
};

pub const CB_TABLE: TableMask = TableMask {
    torsion: [
        (CAN, [true, false, false, false, false]),
        (DUA, [true, false, false, false, false]),
        (SYM, [false; 5]),
        (NAT, [false; 5]),
    ],
    curvature: [
        (CAN, [false; 6]),
        (DUA, [true, false, false, false, false, false]),
        (SYM, [true, false, false, false, false, false]),
        (NAT, [true, false, false, false, false, false]),
    ],
};

const TORSION_LABELS: [&str; 5] = ["Lambda", "R", "C", "P", "T"];

fn table_checks(set: &mut CheckSet, pd: &PointData, prefix: &str, mask: &TableMask, tol: f64) {
    for (k, m) in &mask.torsion {
        let t = pd.tor(*k);
        let bl = t.blocks();
        let mut zmax = 0.0f64;
        for j in 0..5 {
            if m[j] {
                let id = format!("{prefix}.table.torsion.{}.{}", k.name(), TORSION_LABELS[j]);
                set.nonzero(&id, "torsion entry listed as nonzero", bl[j].max_abs(), tol);
            } else {
                zmax = zmax.max(bl[j].max_abs());
            }
        }
        let id = format!("{prefix}.table.torsion.{}.zero_entries", k.name());
        zero(set, pd, &id, "torsion entries listed as zero vanish", zmax, tol);
    }
    for (k, m) in &mask.curvature {
        let c = pd.curv(*k);
        let bl = c.blocks();
        let mut zmax = 0.0f64;
        for j in 0..6 {
            if m[j] {
                let id = format!("{prefix}.table.curvature.{}.{}", k.name(), CURVATURE_NAMES[j]);
                set.nonzero(&id, "curvature entry listed as nonzero", bl[j].max_abs(), tol);
            } else {
                zmax = zmax.max(bl[j].max_abs());
            }
        }
        let id = format!("{prefix}.table.curvature.{}.zero_entries", k.name());
        zero(set, pd, &id, "curvature entries listed as zero vanish", zmax, tol);
    }
}

/// R^a_{μν} = y^b R^a_{bνμ}, P^a_{μc} = y^b P^a_{bμc}, T^a_{bc} = y^d S^a_{dcb} for `k`.
fn liouville_identities(pd: &PointData, k: ConnKind, y: &[f64]) -> (f64, f64) {
    let n = pd.n;
    let (t, c) = (pd.tor(k), pd.curv(k));
    let mut res = 0.0f64;
    let mut scale = 0.0f64;
    for a in 0..n {
        for i in 0..n {
            for j in 0..n {
                let r1 = sum(n, |b| y[b] * c.r_vh[[a, b, j, i]]);
                let r2 = sum(n, |b| y[b] * c.p_v[[a, b, i, j]]);
                let r3 = sum(n, |d| y[d] * c.s_v[[a, d, j, i]]);
                let lhs = [t.rnl[[a, i, j]], t.p[[a, i, j]], t.tv[[a, i, j]]];
                for (l, r) in lhs.iter().zip([r1, r2, r3]) {
                    res = res.max((l - r).abs());
                    scale = scale.max(l.abs()).max(r.abs());
                }
            }
        }
    }
    (res, scale)
}

fn precondition(
    space: &SpaceDefinition,
    points: &[SpacePoint<f64>],
    tol: f64,
    cartan: bool,
    berwald: bool,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for p in points {
        let mut r = Vec::new();
        if cartan {
            r.extend(cartan_residual(space, p)?);
        }
        if berwald {
            r.extend(berwald_residual(space, p)?);
        }
        for v in r {
            worst = if v.is_nan() { f64::NAN } else { worst.max(v) };
        }
    }
    if worst < tol {
        Ok(worst)
    } else {
        Err(match (cartan, berwald) {
            (true, true) => GeomError::PreconditionNotCB { residual: worst },
            (true, false) => GeomError::PreconditionNotCartan { residual: worst },
            _ => GeomError::PreconditionNotBerwald { residual: worst },
        })
    }
}

fn require_points(points: &[SpacePoint<f64>]) -> Result<()> {
    if points.is_empty() {
        return Err(GeomError::InvalidArgument("at least one sample point is required".into()));
    }
    Ok(())
}

/// Signature shared by the regime consequence suites.
pub type RegimeSuite = fn(&SpaceDefinition, &[SpacePoint<f64>], &Tolerances) -> Result<Vec<CheckRecord>>;

pub fn cartan_consequence_suite(
    space: &SpaceDefinition,
    points: &[SpacePoint<f64>],
    tol: &Tolerances,
) -> Result<Vec<CheckRecord>> {
    require_points(points)?;
    let pre = precondition(space, points, tol.regime, true, false)?;
    let t = tol.regime;
    let mut set = CheckSet::new();
    set.residual("cartan.precondition", "Liouville field: y|μ = 0, y||c = δ", pre, 1.0, t);
    for p in points {
        let pd = PointData::new(space, p)?;
        let n = pd.n;
        let can = pd.canon();
        let d_can = CAN.from_jet(&pd.fj);

        let ind = induced_from_jet(&pd.fj, p);
        let (dn, sn) = (ind.max_diff(&pd.fj.nl), ind.max_abs().max(pd.fj.nl.max_abs()));
        set.residual("cartan.induced_nlc", "N equals y^b λ_i^a ∂_μ λ_i_b", dn, sn, tol.d1);

        let rpt = max_of(&[&can.rnl, &can.p, &can.tv]);
        zero(&mut set, &pd, "cartan.torsion_r_p_t_zero", "R, P and T vanish", rpt, t);
        zero(&mut set, &pd, "cartan.contortion_vv_zero", "γ^a_bc vanishes", pd.gam.vv.max_abs(), t);
        equal(&mut set, "cartan.cv_symmetric", "C^a_bc is symmetric", &d_can.cv, &d_can.cv.swap_last(), t);
        for k in ConnKind::DERIVED {
            let id = format!("cartan.cv_agreement.{}", k.name());
            equal(&mut set, &id, "C^a_bc agrees across the four connections", &k.from_jet(&pd.fj).cv, &d_can.cv, t);
        }
        for k in ConnKind::DERIVED {
            let frame = vcov(Quantity::FrameV, k).eval(space, p).max_abs();
            let metric = vcov(Quantity::MetricV, k).eval(space, p).max_abs();
            let lv = kron_diff(&vcov(Quantity::Liouville, k).eval(space, p));
            let id = format!("cartan.vertical_parallel.{}", k.name());
            zero(&mut set, &pd, &id, "λ^a||b = 0, g_ab||c = 0, y^a||b = δ", frame.max(metric).max(lv), t);
        }

        let cv0 = space.frame(p);
        let g0 = metric_of(&crate::space::coframe_of(&cv0), &cv0);
        for s in [0.5, 2.0] {
            let q = p.scale_y(s);
            let f = space.frame(&q);
            let cf = crate::space::coframe_of(&f);
            let g = metric_of(&cf, &f);
            let c0 = crate::space::coframe_of(&cv0);
            let (d1, s1) = (cf.cv.max_diff(&c0.cv), cf.cv.max_abs());
            let (d2, s2) = (g.gv.max_diff(&g0.gv), g.gv.max_abs());
            set.residual(
                "cartan.homogeneity_scaling",
                "λ_a and g_ab unchanged under y → t y",
                d1.max(d2),
                s1.max(s2),
                tol.homogeneity,
            );
        }
        let euler = Mat::from_fn(n, |i, c| sum(n, |b| p.y[b] * pd.fj.d_cv[n + b][(i, c)]));
        zero(&mut set, &pd, "cartan.homogeneity_euler", "y^b ∂̇_b λ_c = 0", euler.max_abs(), tol.homogeneity);

        let dnl = pd.fj.dot_nlc();
        equal(&mut set, "cartan.nlc_vertical_derivative", "∂̇_b N^a_μ = Γ^a_bμ", &dnl, &d_can.gv, t);
        let en = Mat::from_fn(n, |a, m| sum(n, |b| p.y[b] * dnl[[a, b, m]]) - pd.fj.nl[(a, m)]);
        zero(&mut set, &pd, "cartan.nlc_homogeneous", "y^b ∂̇_b N^a_μ = N^a_μ", en.max_abs(), t);
        zero(&mut set, &pd, "cartan.contortion_vh_zero", "γ^a_bμ vanishes", pd.gam.vh.max_abs(), t);
        equal(&mut set, "cartan.gv_natural_equal", "Γ^a_bμ equals the natural one", &NAT.from_jet(&pd.fj).gv, &d_can.gv, t);
        zero(&mut set, &pd, "cartan.natural_p_zero", "natural P^a_μb vanishes", pd.tor(NAT).p.max_abs(), t);

        for k in ConnKind::ALL {
            let (r, s) = liouville_identities(&pd, k, &p.y);
            let id = format!("cartan.liouville_identities.{}", k.name());
            set.residual(&id, "R = y R, P = y P, T = y S", r, s, t);
        }
        for k in ConnKind::DERIVED {
            let r = cartan_residual_for(k, space, p);
            let id = format!("cartan.derived_connection.{}", k.name());
            zero(&mut set, &pd, &id, "derived connection is of Cartan type", r[0].max(r[1]), t);
        }

        let (cn, cd, cs) = (pd.curv(NAT), pd.curv(DUA), pd.curv(SYM));
        zero(
            &mut set,
            &pd,
            "cartan.natural_curvature_zero_blocks",
            "natural R_vh, P_v, S_v vanish",
            max_of(&[&cn.r_vh, &cn.p_v, &cn.s_v]),
            t,
        );
        equal(&mut set, "cartan.dual_r_hh", "dual R_hh = Λ^α_νμ|β", &cd.r_hh, &pd.lam_h_as_curvature(), t);
        zero(
            &mut set,
            &pd,
            "cartan.dual_symmetric_zero_blocks",
            "dual and symmetric R_vh, P_v, S_v vanish",
            max_of(&[&cd.r_vh, &cs.r_vh, &cd.p_v, &cs.p_v, &cd.s_v, &cs.s_v]),
            t,
        );
        let (wn, wd, ws) = (pd.w(NAT), pd.w(DUA), pd.w(SYM));
        equal(&mut set, "cartan.natural_w_hhh_curvature", "natural W_hhh equals R_hh", &wn.hhh, &cn.r_hh.swap_last(), t);
        zero(
            &mut set,
            &pd,
            "cartan.w_zero_blocks",
            "seven vertical W blocks vanish",
            max_of(&[&wn.hhv, &wn.vhv, &wn.vvv, &wd.vhv, &ws.vhv, &wd.vvv, &ws.vvv]),
            t,
        );
        let cy = w_cyclic_residual(space, p)?;
        set.residual(
            "cartan.w_cyclic",
            "cyclic sums of natural and symmetric W vanish; dual one is 2 𝔖 ΛΛ",
            cy.natural.max(cy.symmetric).max(cy.dual),
            cy.w_scale,
            t,
        );

        let (hh, hv) = (&pd.gam.hh, &pd.gam.hv);
        let hv_h = hcov(Quantity::Contortion(ContortionBlock::Hv), CAN).eval(space, p);
        let hh_v = vcov(Quantity::Contortion(ContortionBlock::Hh), CAN).eval(space, p);
        let wa = TensorBlock::from_fn(n, &wn.vhh.sig, |i| {
            let (a, b, v, c) = (i[0], i[1], i[2], i[3]);
            hv_h[[a, b, c, v]] - hh_v[[a, b, v, c]]
                + sum(n, |e| hh[[e, b, v]] * hv[[a, e, c]] - hv[[e, b, c]] * hh[[a, e, v]])
                - sum(n, |e| hv[[e, v, c]] * hh[[a, b, e]])
        });
        equal(&mut set, "cartan.natural_w_vhh_formula", "natural W^α_βνc in terms of γ", &wn.vhh, &wa, t);
        equal(&mut set, "cartan.dual_w_hhh_formula", "dual W_hhh = Λ|β − ΛΛ", &wd.hhh, &pd.dual_w_hhh_reduced(), t);
        let wc = TensorBlock::from_fn(n, &wd.vhh.sig, |i| pd.lam_v[[i[0], i[2], i[1], i[3]]]);
        equal(&mut set, "cartan.dual_w_vhh_formula", "dual W^α_βμc = Λ^α_μβ||c", &wd.vhh, &wc, t);

        table_checks(&mut set, &pd, "cartan", &CARTAN_TABLE, t);
    }
    Ok(set.into_records())
}

pub fn berwald_consequence_suite(
    space: &SpaceDefinition,
    points: &[SpacePoint<f64>],
    tol: &Tolerances,
) -> Result<Vec<CheckRecord>> {
    require_points(points)?;
    let pre = precondition(space, points, tol.regime, false, true)?;
    let t = tol.regime;
    let mut set = CheckSet::new();
    set.residual("berwald.precondition", "∂̇_b N^a_μ = Γ^a_bμ and C^α_μc = 0", pre, 1.0, t);
    for p in points {
        let pd = PointData::new(space, p)?;
        let n = pd.n;
        let fj = &pd.fj;
        let can = pd.canon();
        let (d_can, d_nat) = (CAN.from_jet(fj), NAT.from_jet(fj));

        zero(&mut set, &pd, "berwald.torsion_p_zero", "P^a_μb vanishes", can.p.max_abs(), t);
        let dch = (0..n).map(|c| fj.d_ch[n + c].max_abs()).fold(0.0, f64::max);
        let (dg, _) = y_variation(Quantity::MetricH, space, p);
        zero(&mut set, &pd, "berwald.horizontal_coframe_x_only", "λ_μ and g_μν depend on x only", dch.max(dg), t);
        zero(
            &mut set,
            &pd,
            "berwald.mixed_zero",
            "natural C^α_μc and γ^α_μc vanish",
            d_nat.ch.max_abs().max(pd.gam.hv.max_abs()),
            t,
        );
        for k in [CAN, NAT] {
            let (v, _) = y_variation(Quantity::Conn(k, ConnBlock::Gh), space, p);
            let id = format!("berwald.hh_coefficients_x_only.{}", k.name());
            zero(&mut set, &pd, &id, "hh-coefficients depend on x only", v, t);
        }
        let gamma_x = TensorBlock::from_fn(n, &d_can.gh.sig, |i| {
            let (a, m, v) = (i[0], i[1], i[2]);
            sum(n, |k| fj.frame.lh[(k, a)] * fj.d_ch[v][(k, m)])
        });
        equal(&mut set, "berwald.canonical_hh_formula", "Γ^α_μν = λ_i^α ∂_ν λ_i_μ", &d_can.gh, &gamma_x, t);
        let g = metric_of(&fj.coframe, &fj.frame);
        let dg: Vec<Mat<f64>> = (0..n)
            .map(|m| {
                let a = fj.d_ch[m].transpose().matmul(&fj.coframe.ch);
                Mat::from_fn(n, |i, j| a[(i, j)] + a[(j, i)])
            })
            .collect();
        let chris = TensorBlock::from_fn(n, &d_nat.gh.sig, |i| {
            let (a, m, v) = (i[0], i[1], i[2]);
            0.5 * sum(n, |e| g.gh_inv[(a, e)] * (dg[m][(v, e)] + dg[v][(m, e)] - dg[e][(m, v)]))
        });
        equal(&mut set, "berwald.natural_hh_formula", "natural Γ^α_μν is the Christoffel form of g_μν", &d_nat.gh, &chris, t);
        let (vl, _) = y_variation(Quantity::Torsion(CAN, TorsionBlock::Lam), space, p);
        let (vg, _) = y_variation(Quantity::Contortion(ContortionBlock::Hh), space, p);
        zero(&mut set, &pd, "berwald.lambda_gamma_x_only", "Λ and γ_hh depend on x only", vl.max(vg), t);
        zero(
            &mut set,
            &pd,
            "berwald.gamma_vh_zero",
            "γ^a_bμ and natural P^a_μb vanish",
            pd.gam.vh.max_abs().max(pd.tor(NAT).p.max_abs()),
            t,
        );
        equal(&mut set, "berwald.gv_natural_equal", "Γ^a_bμ equals the natural one", &d_nat.gv, &d_can.gv, t);
        for k in ConnKind::DERIVED {
            let r = berwald_residual_for(k, space, p);
            let id = format!("berwald.derived_connection.{}", k.name());
            zero(&mut set, &pd, &id, "derived connection is of Berwald type", r[0].max(r[1]), t);
        }

        let (cn, cd, cs) = (pd.curv(NAT), pd.curv(DUA), pd.curv(SYM));
        let (vv, rn) = (&pd.gam.vv, &can.rnl);
        let rvh = TensorBlock::from_fn(n, &cn.r_vh.sig, |i| sum(n, |d| vv[[i[0], i[1], d]] * rn[[d, i[2], i[3]]]));
        equal(&mut set, "berwald.natural_r_vh", "natural R^a_bμν = γ^a_bd R^d_μν", &cn.r_vh, &rvh, t);
        zero(&mut set, &pd, "berwald.natural_p_s_h_zero", "natural P_h and S_h vanish", max_of(&[&cn.p_h, &cn.s_h]), t);
        equal(&mut set, "berwald.dual_r_hh", "dual R_hh = Λ^α_νμ|β", &cd.r_hh, &pd.lam_h_as_curvature(), t);
        zero(&mut set, &pd, "berwald.p_h_zero", "dual and symmetric P_h vanish", max_of(&[&cd.p_h, &cs.p_h]), t);
        let (wn, wd, ws) = (pd.w(NAT), pd.w(DUA), pd.w(SYM));
        equal(&mut set, "berwald.dual_p_v_w", "dual P_v equals dual W_vhv", &cd.p_v, &wd.vhv, t);
        zero(
            &mut set,
            &pd,
            "berwald.w_zero_blocks",
            "natural W_hhv, W_vhh and dual, symmetric W_vhh vanish",
            max_of(&[&wn.hhv, &wn.vhh, &wd.vhh, &ws.vhh]),
            t,
        );

        let (hh, lam) = (&pd.gam.hh, &can.lam);
        let hh_h = hcov(Quantity::Contortion(ContortionBlock::Hh), CAN).eval(space, p);
        let wa = TensorBlock::from_fn(n, &wn.hhh.sig, |i| {
            let (a, b, v, m) = (i[0], i[1], i[2], i[3]);
            hh_h[[a, b, m, v]] - hh_h[[a, b, v, m]]
                + sum(n, |e| hh[[e, b, v]] * hh[[a, e, m]] - hh[[e, b, m]] * hh[[a, e, v]])
                - sum(n, |e| hh[[a, b, e]] * lam[[e, v, m]])
        });
        equal(&mut set, "berwald.natural_w_hhh_formula", "natural W_hhh in terms of γ and Λ", &wn.hhh, &wa, t);
        let vv_h = hcov(Quantity::Contortion(ContortionBlock::Vv), CAN).eval(space, p);
        let wb = TensorBlock::from_fn(n, &wn.vhv.sig, |i| vv_h[[i[0], i[1], i[3], i[2]]]);
        equal(&mut set, "berwald.natural_w_vhv_formula", "natural W^a_bνc = γ^a_bc|ν", &wn.vhv, &wb, t);
        equal(&mut set, "berwald.dual_w_hhh_formula", "dual W_hhh = Λ|β − ΛΛ", &wd.hhh, &pd.dual_w_hhh_reduced(), t);
        let tv = &can.tv;
        let wdd = TensorBlock::from_fn(n, &wd.vvv.sig, |i| {
            let (a, b, d, c) = (i[0], i[1], i[2], i[3]);
            pd.t_v[[a, d, c, b]] - sum(n, |e| tv[[e, d, c]] * tv[[a, b, e]])
        });
        equal(&mut set, "berwald.dual_w_vvv_formula", "dual W_vvv = T||b − TT", &wd.vvv, &wdd, t);

        table_checks(&mut set, &pd, "berwald", &BERWALD_TABLE, t);
    }
    Ok(set.into_records())
}

pub fn cb_consequence_suite(
    space: &SpaceDefinition,
    points: &[SpacePoint<f64>],
    tol: &Tolerances,
) -> Result<Vec<CheckRecord>> {
    require_points(points)?;
    let pre = precondition(space, points, tol.regime, true, true)?;
    let t = tol.regime;
    let mut set = CheckSet::new();
    set.residual("cb.precondition", "Cartan type and C^α_μc = 0", pre, 1.0, t);
    for p in points {
        let pd = PointData::new(space, p)?;
        let n = pd.n;
        let can = pd.canon();
        let d_can = CAN.from_jet(&pd.fj);

        zero(
            &mut set,
            &pd,
            "cb.torsion_pattern",
            "torsion is (Λ, 0, 0, 0, 0)",
            max_of(&[&can.rnl, &can.chv, &can.p, &can.tv]),
            t,
        );
        set.nonzero("cb.torsion_lambda", "Λ is present", can.lam.max_abs(), t);
        zero(
            &mut set,
            &pd,
            "cb.contortion_pattern",
            "contortion is (γ_hh, 0, 0, 0)",
            max_of(&[&pd.gam.vh, &pd.gam.hv, &pd.gam.vv]),
            t,
        );
        let mut xo = 0.0f64;
        for q in [Quantity::Torsion(CAN, TorsionBlock::Lam), Quantity::Contortion(ContortionBlock::Hh)] {
            xo = xo.max(y_variation(q, space, p).0);
        }
        for k in ConnKind::ALL {
            xo = xo.max(y_variation(Quantity::Conn(k, ConnBlock::Gh), space, p).0);
        }
        zero(&mut set, &pd, "cb.x_only", "Λ, γ_hh and all hh-coefficients depend on x only", xo, t);
        for k in ConnKind::DERIVED {
            let d = k.from_jet(&pd.fj);
            let diff = d.gv.max_diff(&d_can.gv).max(d.ch.max_diff(&d_can.ch)).max(d.cv.max_diff(&d_can.cv));
            let id = format!("cb.coincide_off_hh.{}", k.name());
            zero(&mut set, &pd, &id, "connections coincide up to the hh-coefficients", diff, t);
        }

        let (hh, lam) = (&pd.gam.hh, &can.lam);
        let hh_h = hcov(Quantity::Contortion(ContortionBlock::Hh), CAN).eval(space, p);
        let rn = TensorBlock::from_fn(n, &[HU, HL, HL, HL], |i| {
            let (a, b, m, v) = (i[0], i[1], i[2], i[3]);
            hh_h[[a, b, m, v]] - hh_h[[a, b, v, m]]
                + sum(n, |e| hh[[e, b, v]] * hh[[a, e, m]] - hh[[e, b, m]] * hh[[a, e, v]])
                + sum(n, |e| hh[[a, b, e]] * lam[[e, m, v]])
        });
        equal(&mut set, "cb.natural_r_hh", "natural R_hh in terms of γ and Λ", &pd.curv(NAT).r_hh, &rn, t);
        equal(&mut set, "cb.dual_r_hh", "dual R_hh = Λ^α_νμ|β", &pd.curv(DUA).r_hh, &pd.lam_h_as_curvature(), t);
        let lh = &pd.lam_h;
        let rs = TensorBlock::from_fn(n, &[HU, HL, HL, HL], |i| {
            let (a, b, m, v) = (i[0], i[1], i[2], i[3]);
            0.5 * (lh[[a, b, m, v]] - lh[[a, b, v, m]])
                + 0.25 * sum(n, |e| lam[[e, b, m]] * lam[[a, v, e]] - lam[[e, b, v]] * lam[[a, m, e]])
                + 0.5 * sum(n, |e| lam[[e, m, v]] * lam[[a, b, e]])
        });
        equal(&mut set, "cb.symmetric_r_hh", "symmetric R_hh in terms of Λ", &pd.curv(SYM).r_hh, &rs, t);

        let wd = pd.w(DUA);
        equal(&mut set, "cb.dual_w_hhh_formula", "dual W_hhh = Λ|β − ΛΛ", &wd.hhh, &pd.dual_w_hhh_reduced(), t);
        let mut other = 0.0f64;
        let mut scale = 0.0f64;
        for k in ConnKind::DERIVED {
            let w = pd.w(k);
            let partner = curvature_partner(pd.curv(k));
            for (j, (b, c)) in w.blocks().iter().zip(partner.iter()).enumerate() {
                if k == DUA && W_NAMES[j] == "W_hhh" {
                    continue;
                }
                other = other.max(b.max_abs().min(b.max_diff(c)));
                scale = scale.max(b.max_abs());
            }
        }
        set.residual("cb.single_w_tensor", "every other W block vanishes or equals a curvature block", other, scale, t);
        for k in ConnKind::DERIVED {
            let a = cartan_residual_for(k, space, p);
            let b = berwald_residual_for(k, space, p);
            let id = format!("cb.derived_connection.{}", k.name());
            zero(&mut set, &pd, &id, "derived connection satisfies the CB-condition", a[0].max(a[1]).max(b[0]).max(b[1]), t);
        }
        table_checks(&mut set, &pd, "cb", &CB_TABLE, t);
    }
    Ok(set.into_records())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;
    use crate::space::builtin_space;

    #[test]
    fn labels() {
        for (name, want) in [
            ("flat", RegimeLabel::Cb),
            ("generic2", RegimeLabel::Generic),
            ("cartan2", RegimeLabel::Cartan),
            ("berwald2", RegimeLabel::Berwald),
            ("cb2", RegimeLabel::Cb),
        ] {
            let s = builtin_space(name).unwrap();
            let r = classify(&s, 10, 42, 1e-9).unwrap();
            assert_eq!(r.label, want, "{name} {:?}", r.residuals);
            assert!(r.cartan_mixed_implies_berwald);
        }
    }

    #[test]
    fn induced_nlc_regimes() {
        let p = SpacePoint::new(vec![0.3, -0.2], vec![0.7, 0.9]).unwrap();
        let s = builtin_space("cartan2").unwrap();
        assert!(induced_nlc(&s, &p).unwrap().max_diff(&s.evaluate_nlc(&p).unwrap()) < 1e-10);
        let s = builtin_space("berwald2").unwrap();
        let phi = crate::space::berwald_phi(&p.x);
        let d = Mat::from_fn(2, |a, m| s.evaluate_nlc(&p).unwrap()[(a, m)] - induced_nlc(&s, &p).unwrap()[(a, m)]);
        assert!(d.max_diff(&phi) < 1e-10, "{d:?} {phi:?}");
        assert!(induced_nlc(&builtin_space("flat").unwrap(), &p).unwrap().max_abs() == 0.0);
    }

    fn show(rs: &[CheckRecord]) -> String {
        rs.iter()
            .filter(|r| r.status != Status::Pass)
            .map(|r| format!("{} {:?} {:e} {:e}\n", r.id, r.status, r.max_residual, r.scale))
            .collect()
    }

    #[test]
    fn suites_on_their_spaces() {
        let tol = Tolerances::default();
        for (name, f) in [
            ("cartan2", cartan_consequence_suite as fn(&_, &_, &_) -> _),
            ("berwald2", berwald_consequence_suite),
            ("cb2", cb_consequence_suite),
        ] {
            let s = builtin_space(name).unwrap();
            let rs = f(&s, &s.sample(3, 42), &tol).unwrap();
            assert!(rs.iter().all(|r| r.passed()), "{name}\n{}", show(&rs));
        }
    }

    #[test]
    fn preconditions_reject() {
        let tol = Tolerances::default();
        let s = builtin_space("cartan2").unwrap();
        let e = berwald_consequence_suite(&s, &s.sample(2, 42), &tol).unwrap_err();
        assert!(matches!(e, GeomError::PreconditionNotBerwald { .. }));
        let s = builtin_space("generic2").unwrap();
        assert!(matches!(
            cartan_consequence_suite(&s, &s.sample(2, 42), &tol),
            Err(GeomError::PreconditionNotCartan { .. })
        ));
        assert!(matches!(cb_consequence_suite(&s, &s.sample(2, 42), &tol), Err(GeomError::PreconditionNotCB { .. })));
    }
}
