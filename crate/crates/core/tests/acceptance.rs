//! Acceptance suite: one line per criterion, exit status 1 if any criterion fails.

use std::collections::BTreeMap;
use std::time::Instant;
use tbframe::calculus::FrameJet;
use tbframe::classify::{berwald_consequence_suite, cartan_consequence_suite, cb_consequence_suite, RegimeSuite};
use tbframe::curvature::{bianchi_residuals, contract, curvature_direct, curvature_formula};
use tbframe::linalg::Mat;
use tbframe::report::DEGENERATE_SCALE;
use tbframe::space::{auxiliary_space, invert_frame, CATALOG};
use tbframe::wtensor::{w_census, w_cyclic_residual, w_formula, w_via_commutator};
use tbframe::{builtin_space, classify, run_suite, CheckRecord, ConnKind, RegimeLabel, SpaceDefinition, SpacePoint, Suite, Tolerances};

const SEED: u64 = 42;
const SWEEP: usize = 50;
const ORACLE_POINTS: usize = 20;

const TOL_FLAT_CURVATURE: f64 = 1e-9;
const TOL_FLAT_W: f64 = 1e-8;
const TOL_METRICITY: f64 = 1e-10;
const TOL_SECOND: f64 = 1e-8;
const TOL_FIRST: f64 = 1e-10;
const TOL_ALGEBRAIC: f64 = 1e-12;
const TOL_REGIME: f64 = 1e-9;
const TOL_HALF: f64 = 1e-10;
const FD_STEP: f64 = 1e-5;
const FD_REL: f64 = 1e-5;
/// denominator floor for the relative difference
const FD_FLOOR: f64 = 1e-3;

struct Outcome {
    pass: bool,
    detail: String,
}

fn spaces() -> Vec<SpaceDefinition> {
    CATALOG.iter().map(|n| builtin_space(n).unwrap()).collect()
}

fn pts(s: &SpaceDefinition, count: usize) -> Vec<SpacePoint<f64>> {
    s.sample(count, SEED)
}

/// Worst record per id across all runs.
#[derive(Default)]
struct Worst(BTreeMap<String, CheckRecord>);

impl Worst {
    fn add(&mut self, rs: Vec<CheckRecord>) {
        for r in rs {
            match self.0.get_mut(&r.id) {
                Some(e) => e.merge(&r),
                None => {
                    self.0.insert(r.id.clone(), r);
                }
            }
        }
    }

    /// Max residual, count and degenerate count over ids matching `pick`.
    fn over(&self, pick: impl Fn(&str) -> bool) -> (f64, usize, usize) {
        let sel: Vec<&CheckRecord> = self.0.values().filter(|r| pick(&r.id)).collect();
        let worst = sel.iter().map(|r| r.max_residual).fold(0.0, |a: f64, b| if b.is_nan() { f64::NAN } else { a.max(b) });
        let degenerate = sel.iter().filter(|r| r.scale < DEGENERATE_SCALE).count();
        (worst, sel.len(), degenerate)
    }
}

fn below(v: f64, tol: f64) -> bool {
    v < tol
}

fn criterion_1() -> Outcome {
    let t0 = Instant::now();
    let mut worst = 0.0f64;
    for s in spaces() {
        for p in pts(&s, SWEEP) {
            worst = worst.max(curvature_direct(ConnKind::Canonical, &s, &p).unwrap().max_abs());
        }
    }
    Outcome {
        pass: below(worst, TOL_FLAT_CURVATURE),
        detail: format!(
            "canonical curvature: max {worst:.2e} < {TOL_FLAT_CURVATURE:.0e}, 5 spaces x {SWEEP} points, {:.2} s",
            t0.elapsed().as_secs_f64()
        ),
    }
}

fn criterion_2() -> Outcome {
    let t0 = Instant::now();
    let mut worst = 0.0f64;
    for s in spaces() {
        for p in pts(&s, SWEEP) {
            worst = worst.max(w_via_commutator(ConnKind::Canonical, &s, &p).unwrap().max_abs());
        }
    }
    Outcome {
        pass: below(worst, TOL_FLAT_W),
        detail: format!(
            "canonical W-tensors: max {worst:.2e} < {TOL_FLAT_W:.0e}, 5 spaces x {SWEEP} points, {:.2} s",
            t0.elapsed().as_secs_f64()
        ),
    }
}

fn criterion_3() -> Outcome {
    let mut w = Worst::default();
    for s in spaces() {
        w.add(run_suite(&s, Suite::Metric, &pts(&s, SWEEP), &Tolerances::default()).unwrap());
    }
    let (a, _, _) = w.over(|id| id == "metric.canonical_metricity" || id == "metric.natural_metricity");
    let (b, nb, _) = w.over(|id| id.starts_with("metric.dual_") || id == "metric.symmetric_half_dual");
    Outcome {
        pass: below(a, TOL_METRICITY) && below(b, TOL_METRICITY) && nb == 4,
        detail: format!(
            "metricity canonical/natural max {a:.2e}, dual/symmetric closed forms max {b:.2e} ({nb} checks), tol {TOL_METRICITY:.0e}"
        ),
    }
}

fn criterion_4() -> Outcome {
    let s = builtin_space("generic2").unwrap();
    let (mut curv, mut wt) = (0.0f64, 0.0f64);
    for p in pts(&s, SWEEP) {
        for k in ConnKind::DERIVED {
            curv = curv.max(curvature_direct(k, &s, &p).unwrap().max_diff(&curvature_formula(k, &s, &p).unwrap()));
            wt = wt.max(w_via_commutator(k, &s, &p).unwrap().max_diff(&w_formula(k, &s, &p).unwrap()));
        }
    }
    let mut w = Worst::default();
    w.add(run_suite(&s, Suite::Torsion, &pts(&s, SWEEP), &Tolerances::default()).unwrap());
    let (can, _, _) = w.over(|id| id == "torsion.canonical_two_routes");
    let (gam, _, _) = w.over(|id| id == "torsion.contortion_via_lambda");
    Outcome {
        pass: below(curv, TOL_SECOND) && below(wt, TOL_SECOND) && below(can, TOL_FIRST) && below(gam, TOL_FIRST),
        detail: format!(
            "generic2 curvature {curv:.2e}, W {wt:.2e} (< {TOL_SECOND:.0e}); canonical {can:.2e}, contortion {gam:.2e} (< {TOL_FIRST:.0e})"
        ),
    }
}

fn criterion_5() -> Outcome {
    let mut w = Worst::default();
    for s in spaces() {
        let p = pts(&s, SWEEP);
        w.add(run_suite(&s, Suite::Torsion, &p, &Tolerances::default()).unwrap());
        w.add(run_suite(&s, Suite::Metric, &p, &Tolerances::default()).unwrap());
    }
    let (alg, _, _) = w.over(|id| {
        matches!(id, "torsion.contortion_skew" | "torsion.contortion_traces" | "metric.kronecker" | "torsion.basic_vector_routes")
    });
    let (anti, _, _) = w.over(|id| id == "torsion.antisymmetry");
    let (rel, nrel, _) = w.over(|id| id.starts_with("torsion.contortion_relation."));
    let (lam, _, _) = w.over(|id| {
        matches!(id, "torsion.dual_frame_h" | "torsion.dual_frame_v" | "torsion.mixed_frame_parallel" | "torsion.symmetric_frame_half")
    });
    Outcome {
        pass: below(alg, TOL_ALGEBRAIC) && anti == 0.0 && below(rel, TOL_FIRST) && nrel == 4 && below(lam, TOL_FIRST),
        detail: format!(
            "skew/traces/Kronecker {alg:.2e} < {TOL_ALGEBRAIC:.0e}; antisymmetry {anti:.1e} (exact); \
             torsion-contortion {rel:.2e}, λ-derivatives {lam:.2e} < {TOL_FIRST:.0e}"
        ),
    }
}

fn criterion_6() -> Outcome {
    let mut bianchi = [0.0f64; 4];
    let mut scales = [0.0f64; 4];
    let mut cyc = 0.0f64;
    let mut cyc_scale = 0.0f64;
    let g2 = builtin_space("generic2").unwrap();
    let g3 = auxiliary_space("generic3").unwrap();
    let mut scales3 = [0.0f64; 4];
    let mut cyc_scale3 = 0.0f64;
    for (s, sc, cs) in [(&g2, &mut scales, &mut cyc_scale), (&g3, &mut scales3, &mut cyc_scale3)] {
        for p in pts(s, SWEEP) {
            let b = bianchi_residuals(s, &p).unwrap();
            for k in 0..4 {
                bianchi[k] = bianchi[k].max(b.values()[k]);
                sc[k] = sc[k].max(b.scales[k]);
            }
            let c = w_cyclic_residual(s, &p).unwrap();
            cyc = cyc.max(c.natural).max(c.dual).max(c.symmetric);
            *cs = cs.max(c.w_scale);
        }
    }
    let bmax = bianchi.iter().copied().fold(0.0, f64::max);
    let vacuous = scales.iter().filter(|v| **v < DEGENERATE_SCALE).count() + usize::from(cyc_scale < DEGENERATE_SCALE);
    let live3 = scales3.iter().all(|v| *v > DEGENERATE_SCALE) && cyc_scale3 > DEGENERATE_SCALE;
    Outcome {
        pass: below(bmax, TOL_SECOND) && below(cyc, TOL_SECOND) && live3,
        detail: format!(
            "generic2 + generic3: Bianchi {bmax:.2e}, cyclic W {cyc:.2e} < {TOL_SECOND:.0e}; \
             {vacuous} of 5 cyclic identities vacuous at n = 2, all live at n = 3"
        ),
    }
}

fn criterion_7() -> Outcome {
    let s = builtin_space("generic2").unwrap();
    let mut worst = 0.0f64;
    let mut count = 0;
    for p in pts(&s, SWEEP) {
        for k in ConnKind::DERIVED {
            let (a, b) = contract(k, &s, &p).unwrap();
            let d = a.diffs(&b);
            count = d.len() * 3;
            worst = d.iter().copied().fold(worst, f64::max);
        }
    }
    Outcome {
        pass: below(worst, TOL_SECOND),
        detail: format!("generic2 contractions: {count} identities, max {worst:.2e} < {TOL_SECOND:.0e}"),
    }
}

fn criterion_8() -> Outcome {
    let expect = [
        ("flat", RegimeLabel::Cb),
        ("cb2", RegimeLabel::Cb),
        ("cartan2", RegimeLabel::Cartan),
        ("berwald2", RegimeLabel::Berwald),
        ("generic2", RegimeLabel::Generic),
    ];
    let mut labels_ok = true;
    for (name, want) in expect {
        let s = builtin_space(name).unwrap();
        let a = classify(&s, SWEEP, SEED, TOL_REGIME).unwrap();
        let b = classify(&s, SWEEP, SEED, TOL_REGIME).unwrap();
        labels_ok &= a.label == want && a == b;
    }
    let tol = Tolerances::default();
    let runs: [(&str, RegimeSuite); 4] = [
        ("cartan2", cartan_consequence_suite),
        ("berwald2", berwald_consequence_suite),
        ("berwald2v", berwald_consequence_suite),
        ("cb2", cb_consequence_suite),
    ];
    let (mut total, mut failed, mut degenerate) = (0, 0, 0);
    for (name, run) in runs {
        let s = tbframe::lookup_space(name).unwrap();
        match run(&s, &pts(&s, SWEEP), &tol) {
            Ok(rs) => {
                total += rs.len();
                failed += rs.iter().filter(|r| !r.passed()).count();
                degenerate += rs.iter().filter(|r| r.status == tbframe::Status::Degenerate).count();
            }
            Err(_) => failed += 1,
        }
    }
    Outcome {
        pass: labels_ok && failed == 0,
        detail: format!(
            "labels {}; regime suites {total} checks, {failed} failed, {degenerate} degenerate (regime {:.0e}, homogeneity {:.0e})",
            if labels_ok { "as expected and repeatable" } else { "WRONG" },
            tol.regime,
            tol.homogeneity
        ),
    }
}

fn criterion_9() -> Outcome {
    let s = builtin_space("generic2").unwrap();
    let c = w_census(&s, &pts(&s, SWEEP)).unwrap();
    Outcome {
        pass: c.matches_expected() && below(c.half_relation_residual, TOL_HALF),
        detail: format!(
            "generic2 census: {} zero, {} curvature-equal, {} half, {} independent; half relations {:.2e} < {TOL_HALF:.0e}",
            c.zero, c.curvature_equal, c.half_duplicate, c.independent, c.half_relation_residual
        ),
    }
}

fn rel_gap(jet: &Mat<f64>, fd: &Mat<f64>) -> f64 {
    jet.data
        .iter()
        .zip(&fd.data)
        .map(|(a, b)| (a - b).abs() / a.abs().max(b.abs()).max(FD_FLOOR))
        .fold(0.0, f64::max)
}

fn criterion_10() -> Outcome {
    let mut worst = 0.0f64;
    let mut compared = 0usize;
    let mut all: Vec<SpaceDefinition> = spaces();
    all.extend(["flat3", "generic3", "berwald2v"].iter().map(|n| auxiliary_space(n).unwrap()));
    for s in &all {
        for p in pts(s, ORACLE_POINTS) {
            let fj = FrameJet::new(s, &p);
            for k in 0..2 * s.n {
                let (fp, fm) = (s.frame(&p.shifted(k, FD_STEP)), s.frame(&p.shifted(k, -FD_STEP)));
                let (cp, cm) = (invert_frame(&fp).unwrap(), invert_frame(&fm).unwrap());
                let (np, nm) = (s.nlc(&p.shifted(k, FD_STEP)), s.nlc(&p.shifted(k, -FD_STEP)));
                let cd = |a: &Mat<f64>, b: &Mat<f64>| Mat::from_fn(a.n, |i, j| (a[(i, j)] - b[(i, j)]) / (2.0 * FD_STEP));
                for (jet, fd) in [
                    (&fj.d_lh[k], cd(&fp.lh, &fm.lh)),
                    (&fj.d_lv[k], cd(&fp.lv, &fm.lv)),
                    (&fj.d_ch[k], cd(&cp.ch, &cm.ch)),
                    (&fj.d_cv[k], cd(&cp.cv, &cm.cv)),
                    (&fj.d_nl[k], cd(&np, &nm)),
                ] {
                    worst = worst.max(rel_gap(jet, &fd));
                    compared += jet.data.len();
                }
            }
        }
    }
    Outcome {
        pass: below(worst, FD_REL),
        detail: format!(
            "jet vs central differences (h = {FD_STEP:.0e}): {compared} partials over {} spaces x {ORACLE_POINTS} points, max rel {worst:.2e} < {FD_REL:.0e}",
            all.len()
        ),
    }
}

fn main() {
    let criteria: [fn() -> Outcome; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let o = c();
        println!("criterion {:>2} {}  {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} of 10 passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
