//! Verification suites: named groups of identity checks run over sample points.

use crate::calculus::{hcov, vcov, FrameJet, TensorField};
use crate::classify::{
    berwald_consequence_suite, berwald_residual, cartan_consequence_suite, cartan_residual, cb_consequence_suite,
    RegimeLabel, RegimeSuite,
};
use crate::connections::{
    basic_vector, canonical_connection, canonical_via_contortion, contortion_from_jet, contortion_from_torsion,
    contortion_via_lambda, lower_first, natural_connection_via_lambda, torsion_at, torsion_contortion_relations,
    ConnKind,
};
use crate::curvature::{bianchi_residuals, contract, curvature_direct, curvature_formula, CONTRACTION_NAMES, CURVATURE_NAMES};
use crate::error::{GeomError, Result};
use crate::fields::Quantity;
use crate::linalg::Mat;
use crate::metric::{metric, metricity_blocks};
use crate::report::{CheckRecord, CheckSet};
use crate::space::{invert_frame, kronecker_residual, SpaceDefinition, SpacePoint};
use crate::tensor::{diff_and_scale, TensorBlock};
use crate::tolerances::{Tolerances, REGIME_FAIL};
use crate::wtensor::{w_census, w_cyclic_residual, w_formula, w_hhh_covariant_route, w_via_commutator, W_NAMES};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Metric,
    Torsion,
    Curvature,
    Bianchi,
    Wtensor,
    Cartan,
    Berwald,
    Cb,
    All,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Metric,
        Suite::Torsion,
        Suite::Curvature,
        Suite::Bianchi,
        Suite::Wtensor,
        Suite::Cartan,
        Suite::Berwald,
        Suite::Cb,
        Suite::All,
    ];
    const BASE: [Suite; 5] = [Suite::Metric, Suite::Torsion, Suite::Curvature, Suite::Bianchi, Suite::Wtensor];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Metric => "metric",
            Suite::Torsion => "torsion",
            Suite::Curvature => "curvature",
            Suite::Bianchi => "bianchi",
            Suite::Wtensor => "wtensor",
            Suite::Cartan => "cartan",
            Suite::Berwald => "berwald",
            Suite::Cb => "cb",
            Suite::All => "all",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| GeomError::UnknownSuite(s.into()))
    }
}

/// Regime label of `space` judged on `points` alone.
pub fn detect_label(space: &SpaceDefinition, points: &[SpacePoint<f64>], tol: f64) -> Result<RegimeLabel> {
    let mut r = [0.0f64; 4];
    for p in points {
        let c = cartan_residual(space, p)?;
        let b = berwald_residual(space, p)?;
        for (k, v) in c.into_iter().chain(b).enumerate() {
            r[k] = if v.is_nan() { f64::NAN } else { r[k].max(v) };
        }
    }
    let verdict = |rs: &[f64]| {
        if rs.iter().all(|v| *v < tol) {
            Some(true)
        } else if rs.iter().any(|v| !(*v <= REGIME_FAIL)) {
            Some(false)
        } else {
            None
        }
    };
    Ok(match (verdict(&r[..2]), verdict(&r[2..])) {
        (None, _) | (_, None) => RegimeLabel::Indeterminate,
        (Some(true), Some(true)) => RegimeLabel::Cb,
        (Some(true), Some(false)) => RegimeLabel::Cartan,
        (Some(false), Some(true)) => RegimeLabel::Berwald,
        (Some(false), Some(false)) => RegimeLabel::Generic,
    })
}

/// Runs `suite` over `points`. Failed regime preconditions come back as a failed record.
pub fn run_suite(
    space: &SpaceDefinition,
    suite: Suite,
    points: &[SpacePoint<f64>],
    tol: &Tolerances,
) -> Result<Vec<CheckRecord>> {
    tol.validate()?;
    if points.is_empty() {
        return Err(GeomError::InvalidArgument("at least one sample point is required".into()));
    }
    for p in points {
        space.check_point(p)?;
    }
    let mut set = CheckSet::new();
    match suite {
        Suite::Metric => metric_suite(&mut set, space, points, tol)?,
        Suite::Torsion => torsion_suite(&mut set, space, points, tol)?,
        Suite::Curvature => curvature_suite(&mut set, space, points, tol)?,
        Suite::Bianchi => bianchi_suite(&mut set, space, points, tol)?,
        Suite::Wtensor => wtensor_suite(&mut set, space, points, tol)?,
        Suite::Cartan | Suite::Berwald | Suite::Cb => regime(&mut set, space, suite, points, tol)?,
        Suite::All => {
            for s in Suite::BASE {
                set.extend(run_suite(space, s, points, tol)?);
            }
            let regimes: &[Suite] = match detect_label(space, points, tol.regime)? {
                RegimeLabel::Cartan => &[Suite::Cartan],
                RegimeLabel::Berwald => &[Suite::Berwald],
                RegimeLabel::Cb => &[Suite::Cartan, Suite::Berwald, Suite::Cb],
                _ => &[],
            };
            for &s in regimes {
                regime(&mut set, space, s, points, tol)?;
            }
        }
    }
    Ok(set.into_records())
}

fn regime(set: &mut CheckSet, space: &SpaceDefinition, suite: Suite, points: &[SpacePoint<f64>], tol: &Tolerances) -> Result<()> {
    let (run, anchor): (RegimeSuite, &str) =
        match suite {
            Suite::Cartan => (cartan_consequence_suite, "Liouville field: y|μ = 0, y||c = δ"),
            Suite::Berwald => (berwald_consequence_suite, "∂̇_b N^a_μ = Γ^a_{bμ} and C^α_{μc} = 0"),
            _ => (cb_consequence_suite, "Cartan and Berwald conditions together"),
        };
    match run(space, points, tol) {
        Ok(rs) => set.extend(rs),
        Err(
            GeomError::PreconditionNotCartan { residual }
            | GeomError::PreconditionNotBerwald { residual }
            | GeomError::PreconditionNotCB { residual },
        ) => set.push(CheckRecord::failed(&format!("{}.precondition", suite.name()), anchor, residual, tol.regime)),
        Err(e) => return Err(e),
    }
    Ok(())
}

fn equal(set: &mut CheckSet, id: &str, anchor: &str, a: &TensorBlock<f64>, b: &TensorBlock<f64>, tol: f64) {
    let (d, s) = diff_and_scale(a, b);
    set.residual(id, anchor, d, s, tol);
}

fn zero(set: &mut CheckSet, id: &str, anchor: &str, v: f64, activity: f64, tol: f64) {
    set.residual(id, anchor, v, activity.max(v), tol);
}

fn max_of<'a>(bs: impl IntoIterator<Item = &'a TensorBlock<f64>>) -> f64 {
    bs.into_iter().map(|b| b.max_abs()).fold(0.0, f64::max)
}

/// `t[α][β][μ] + t[β][α][μ]` for a block whose first index is already lowered.
fn sym_first_two(t: &TensorBlock<f64>) -> TensorBlock<f64> {
    t.permuted(&[1, 0, 2]).add(t)
}

fn metric_suite(set: &mut CheckSet, space: &SpaceDefinition, points: &[SpacePoint<f64>], tol: &Tolerances) -> Result<()> {
    for p in points {
        let fj = FrameJet::new(space, p);
        let act = fj.activity();
        let f = space.frame(p);
        let cf = invert_frame(&f)?;
        set.residual("metric.kronecker", "λ_i^α λ_i_β = δ and λ_i^a λ_i_b = δ", kronecker_residual(&f, &cf), 1.0, tol.algebraic);
        let g = metric(space, p)?;
        let id = Mat::identity(space.n);
        let inv = g.gh.matmul(&g.gh_inv).max_diff(&id).max(g.gv.matmul(&g.gv_inv).max_diff(&id));
        set.residual("metric.inverse", "g g⁻¹ = 1 on both blocks", inv, 1.0, tol.algebraic);
        let sym = g.gh.max_diff(&g.gh.transpose()).max(g.gv.max_diff(&g.gv.transpose()));
        set.residual("metric.symmetry", "g_{αβ} and g_{ab} symmetric", sym, g.gh.max_abs().max(g.gv.max_abs()), tol.algebraic);

        for (k, id, anchor) in [
            (ConnKind::Canonical, "metric.canonical_metricity", "canonical connection is metric"),
            (ConnKind::Natural, "metric.natural_metricity", "natural connection is metric"),
        ] {
            zero(set, id, anchor, max_of(&metricity_blocks(k, space, p)), act, tol.d1);
        }

        let t = torsion_at(ConnKind::Canonical, space, p);
        let dual = metricity_blocks(ConnKind::Dual, space, p);
        let want_h = sym_first_two(&lower_first(&g.gh, &t.lam));
        let want_v = sym_first_two(&lower_first(&g.gv, &t.tv));
        equal(set, "metric.dual_nonmetricity_h", "g_{αβ|̃μ} = Λ_{αβμ} + Λ_{βαμ}", &dual[0], &want_h, tol.d1);
        equal(set, "metric.dual_nonmetricity_v", "g_{ab||̃c} = T_{abc} + T_{bac}", &dual[3], &want_v, tol.d1);
        zero(set, "metric.dual_mixed_metricity", "g_{αβ||̃c} = 0 and g_{ab|̃μ} = 0", max_of([&dual[1], &dual[2]]), act, tol.d1);
        let sym = metricity_blocks(ConnKind::Symmetric, space, p);
        let half = sym.iter().zip(&dual).map(|(s, d)| s.max_diff(&d.scaled(0.5))).fold(0.0, f64::max);
        set.residual("metric.symmetric_half_dual", "symmetric nonmetricity is half the dual one", half, max_of(&dual), tol.d1);

        let nat = ConnKind::Natural.coefficients(space, p);
        let asym = nat.gh.max_diff(&nat.gh.swap_last()).max(nat.cv.max_diff(&nat.cv.swap_last()));
        set.residual("metric.natural_symmetric", "natural Γ^α_{μν} and C^a_{bc} symmetric", asym, nat.max_abs(), tol.algebraic);
        let via = natural_connection_via_lambda(space, p)?;
        set.residual("metric.natural_two_routes", "natural connection from λ and from g agree", nat.max_diff(&via), nat.max_abs(), tol.d1);
    }
    Ok(())
}

fn torsion_suite(set: &mut CheckSet, space: &SpaceDefinition, points: &[SpacePoint<f64>], tol: &Tolerances) -> Result<()> {
    use ConnKind::{Canonical as CAN, Dual as DUA, Natural as NAT, Symmetric as SYM};
    let frames = [Quantity::FrameH, Quantity::FrameV, Quantity::CoframeH, Quantity::CoframeV];
    for p in points {
        let fj = FrameJet::new(space, p);
        let act = fj.activity();
        let n = space.n;
        let ap = frames
            .iter()
            .map(|q| hcov(*q, CAN).eval(space, p).max_abs().max(vcov(*q, CAN).eval(space, p).max_abs()))
            .fold(0.0, f64::max);
        zero(set, "torsion.ap_condition", "λ_i^• and λ_i_• are canonically parallel", ap, act, tol.d1);

        let can = canonical_connection(space, p)?;
        let via = canonical_via_contortion(space, p)?;
        set.residual("torsion.canonical_two_routes", "canonical = natural + contortion", can.max_diff(&via), can.max_abs(), tol.d1);

        let tc = torsion_at(CAN, space, p);
        let anti = [&tc.lam, &tc.rnl, &tc.tv].iter().map(|b| b.add(&b.swap_last()).max_abs()).fold(0.0, f64::max);
        set.residual("torsion.antisymmetry", "Λ, R and T skew in their lower pair", anti, max_of([&tc.lam, &tc.rnl, &tc.tv]), tol.algebraic);

        let g = metric(space, p)?;
        let gam = contortion_from_jet(&fj);
        let skew = [(&g.gh, &gam.hh), (&g.gv, &gam.vh), (&g.gh, &gam.hv), (&g.gv, &gam.vv)]
            .iter()
            .map(|(m, b)| {
                let l = lower_first(m, b);
                l.add(&l.permuted(&[1, 0, 2])).max_abs()
            })
            .fold(0.0, f64::max);
        set.residual("torsion.contortion_skew", "lowered contortion skew in its first pair", skew, max_of(gam.blocks()), tol.algebraic);
        let traces = gam
            .blocks()
            .iter()
            .map(|b| (0..n).map(|k| (0..n).map(|a| b[[a, a, k]]).sum::<f64>().abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        zero(set, "torsion.contortion_traces", "γ^α_{αν}, γ^a_{aμ}, γ^α_{αc}, γ^a_{ac} vanish", traces, act, tol.algebraic);

        let (bt, bg) = basic_vector(&tc, &gam);
        let d = bt.ch.max_diff(&bg.ch).max(bt.cv.max_diff(&bg.cv));
        set.residual("torsion.basic_vector_routes", "C_μ and C_a from torsion and contortion traces", d, max_of([&bt.ch, &bt.cv]), tol.algebraic);

        let rel = torsion_contortion_relations(space, p)?;
        let names = ["lambda", "p", "c", "t"];
        for ((r, s), nm) in rel.iter().zip(names) {
            set.residual(&format!("torsion.contortion_relation.{nm}"), "torsion blocks from contortion", *r, *s, tol.d1);
        }
        let (hh, vv) = contortion_from_torsion(&tc, &g);
        let d = hh.max_diff(&lower_first(&g.gh, &gam.hh)).max(vv.max_diff(&lower_first(&g.gv, &gam.vv)));
        set.residual("torsion.contortion_from_torsion", "γ_{αμν} and γ_{abc} from Λ and T", d, max_of([&hh, &vv]), tol.d1);
        let lam_via = contortion_via_lambda(space, p);
        let d = lam_via.blocks().iter().zip(gam.blocks()).map(|(a, b)| a.max_diff(b)).fold(0.0, f64::max);
        set.residual("torsion.contortion_via_lambda", "γ from natural derivatives of the coframe", d, max_of(gam.blocks()), tol.d1);

        let f = &fj.frame;
        let dual_h = hcov(Quantity::FrameH, DUA).eval(space, p);
        let dual_v = vcov(Quantity::FrameV, DUA).eval(space, p);
        let want_h = TensorBlock::from_fn(n, &dual_h.sig.clone(), |i| {
            (0..n).map(|b| f.lh[(i[0], b)] * tc.lam[[i[1], i[2], b]]).sum()
        });
        let want_v = TensorBlock::from_fn(n, &dual_v.sig.clone(), |i| {
            (0..n).map(|b| f.lv[(i[0], b)] * tc.tv[[i[1], i[2], b]]).sum()
        });
        equal(set, "torsion.dual_frame_h", "λ_i^α|̃μ = λ_i^β Λ^α_{μβ}", &dual_h, &want_h, tol.d1);
        equal(set, "torsion.dual_frame_v", "λ_i^a||̃c = λ_i^b T^a_{cb}", &dual_v, &want_v, tol.d1);
        let sym_h = hcov(Quantity::FrameH, SYM).eval(space, p);
        let sym_v = vcov(Quantity::FrameV, SYM).eval(space, p);
        let d = sym_h.max_diff(&dual_h.scaled(0.5)).max(sym_v.max_diff(&dual_v.scaled(0.5)));
        set.residual("torsion.symmetric_frame_half", "symmetric frame derivatives are half the dual ones", d, max_of([&dual_h, &dual_v]), tol.algebraic);
        let mixed = [DUA, SYM]
            .iter()
            .map(|k| vcov(Quantity::FrameH, *k).eval(space, p).max_abs().max(hcov(Quantity::FrameV, *k).eval(space, p).max_abs()))
            .fold(0.0, f64::max);
        zero(set, "torsion.mixed_frame_parallel", "λ_i^α||c = 0 and λ_i^a|μ = 0 for dual and symmetric", mixed, act, tol.d1);

        let td = torsion_at(DUA, space, p);
        let ts = torsion_at(SYM, space, p);
        let tn = torsion_at(NAT, space, p);
        let flip = td.lam.add(&tc.lam).max_abs().max(td.tv.add(&tc.tv).max_abs());
        set.residual("torsion.table.dual_flips", "dual Λ and T are minus the canonical ones", flip, max_of([&tc.lam, &tc.tv]), tol.algebraic);
        let vanish = max_of([&ts.lam, &ts.tv, &tn.lam, &tn.tv]);
        zero(set, "torsion.table.symmetric_natural_zero", "symmetric and natural Λ and T vanish", vanish, act, tol.algebraic);
        let shared = td.p.max_diff(&tc.p).max(ts.p.max_diff(&tc.p));
        set.residual("torsion.table.shared_p", "P agrees for canonical, dual and symmetric", shared, tc.p.max_abs(), tol.algebraic);
        let r = [&td, &ts, &tn].iter().map(|t| t.rnl.max_diff(&tc.rnl)).fold(0.0, f64::max);
        set.residual("torsion.table.shared_r", "R is the same for every connection", r, tc.rnl.max_abs(), tol.algebraic);
    }
    Ok(())
}

fn curvature_suite(set: &mut CheckSet, space: &SpaceDefinition, points: &[SpacePoint<f64>], tol: &Tolerances) -> Result<()> {
    for p in points {
        let act = FrameJet::new(space, p).activity();
        let can = curvature_direct(ConnKind::Canonical, space, p)?;
        zero(set, "curvature.canonical_vanishes", "canonical curvature is zero", can.max_abs(), act, tol.flat_curvature);
        for k in ConnKind::DERIVED {
            let direct = curvature_direct(k, space, p)?;
            let formula = curvature_formula(k, space, p)?;
            for ((nm, d), (a, b)) in CURVATURE_NAMES.iter().zip(direct.block_diffs(&formula)).zip(direct.blocks().iter().zip(formula.blocks())) {
                let s = a.max_abs().max(b.max_abs());
                set.residual(&format!("curvature.{}.{nm}", k.name()), "closed form equals commutator curvature", d, s, tol.d2);
            }
            let (traced, closed) = contract(k, space, p)?;
            let scale = traced.max_abs().max(closed.max_abs());
            for (nm, d) in CONTRACTION_NAMES.iter().zip(traced.diffs(&closed)) {
                set.residual(&format!("curvature.{}.{nm}", k.name()), "contraction closed form", d, scale, tol.d2);
            }
        }
    }
    Ok(())
}

fn bianchi_suite(set: &mut CheckSet, space: &SpaceDefinition, points: &[SpacePoint<f64>], tol: &Tolerances) -> Result<()> {
    let names = [
        ("bianchi.lambda_cyclic", "𝔖 Λ^α_{μν|β} identity"),
        ("bianchi.torsion_cyclic", "𝔖 T^a_{bc||d} identity"),
        ("bianchi.lambda_contracted", "contracted Λ identity"),
        ("bianchi.torsion_contracted", "contracted T identity"),
    ];
    for p in points {
        let b = bianchi_residuals(space, p)?;
        for (((id, anchor), v), s) in names.iter().zip(b.values()).zip(b.scales) {
            set.residual(id, anchor, v, s, tol.d2);
        }
    }
    Ok(())
}

fn wtensor_suite(set: &mut CheckSet, space: &SpaceDefinition, points: &[SpacePoint<f64>], tol: &Tolerances) -> Result<()> {
    for p in points {
        let act = FrameJet::new(space, p).activity();
        let wc = w_via_commutator(ConnKind::Canonical, space, p)?;
        zero(set, "wtensor.canonical_vanishes", "canonical W-tensors vanish", wc.max_abs(), act, tol.d2);
        let mut ws = Vec::new();
        for k in ConnKind::DERIVED {
            let w = w_via_commutator(k, space, p)?;
            let f = w_formula(k, space, p)?;
            for (nm, (a, b)) in W_NAMES.iter().zip(w.blocks().iter().zip(f.blocks())) {
                equal(set, &format!("wtensor.{}.{nm}", k.name()), "closed form equals commutator W", a, b, tol.d2);
            }
            let route = w_hhh_covariant_route(k, space, p)?;
            let (d, s) = (w.hhh.add(&route).max_abs(), w.hhh.max_abs().max(route.max_abs()));
            set.residual(&format!("wtensor.{}.covariant_route", k.name()), "W + W' = 0 on the hhh block", d, s, tol.d2);
            ws.push(w);
        }
        let (wd, wsym) = (&ws[1], &ws[2]);
        for bi in [2, 3] {
            let (a, b) = (wsym.blocks()[bi], wd.blocks()[bi].scaled(0.5));
            equal(set, &format!("wtensor.half.{}", W_NAMES[bi]), "symmetric block is half the dual one", a, &b, tol.d2);
        }
        let c = w_cyclic_residual(space, p)?;
        for (id, v, anchor) in [
            ("wtensor.cyclic.natural", c.natural, "𝔖 W = 𝔖 R C"),
            ("wtensor.cyclic.symmetric", c.symmetric, "𝔖 Ŵ = 𝔖 R C"),
            ("wtensor.cyclic.dual", c.dual, "𝔖 W̃ = 2 𝔖 (R C + Λ Λ)"),
        ] {
            set.residual(id, anchor, v, c.w_scale, tol.d2);
        }
    }
    if detect_label(space, points, tol.regime)? == RegimeLabel::Generic {
        let c = w_census(space, points)?;
        let miss = c.zero.abs_diff(4) + c.curvature_equal.abs_diff(4) + c.independent.abs_diff(8) + c.half_duplicate.abs_diff(2);
        set.residual("wtensor.census", "4 zero, 4 equal to curvature, 8 independent, 2 half", miss as f64, 18.0, 0.5);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;
    use crate::space::builtin_space;

    fn failures(rs: &[CheckRecord]) -> Vec<String> {
        rs.iter().filter(|r| !r.passed()).map(|r| format!("{} {:e}/{:e}", r.id, r.max_residual, r.tolerance)).collect()
    }

    #[test]
    fn base_suites_pass_on_generic2() {
        let s = builtin_space("generic2").unwrap();
        let pts = s.sample(3, 42);
        for suite in Suite::BASE {
            let rs = run_suite(&s, suite, &pts, &Tolerances::default()).unwrap();
            assert!(failures(&rs).is_empty(), "{}: {:?}", suite.name(), failures(&rs));
        }
    }

    #[test]
    fn all_on_each_catalog_space() {
        for name in crate::space::CATALOG {
            let s = builtin_space(name).unwrap();
            let rs = run_suite(&s, Suite::All, &s.sample(2, 7), &Tolerances::default()).unwrap();
            assert!(failures(&rs).is_empty(), "{name}: {:?}", failures(&rs));
        }
    }

    #[test]
    fn precondition_failure_is_a_record() {
        let s = builtin_space("generic2").unwrap();
        let rs = run_suite(&s, Suite::Cartan, &s.sample(2, 1), &Tolerances::default()).unwrap();
        assert_eq!(rs.len(), 1);
        assert_eq!((rs[0].id.as_str(), rs[0].status), ("cartan.precondition", Status::Fail));
    }

    #[test]
    fn parse_names() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse(s.name()).unwrap(), s);
        }
        assert!(matches!(Suite::parse("nope"), Err(GeomError::UnknownSuite(_))));
    }
}
