//! Library values against frozen high-precision finite-difference values at one point.

#[allow(dead_code)]
mod data {
    include!("data/oracle_values.rs");
}

use data::*;
use tbframe::connections::torsion;
use tbframe::curvature::curvature_direct;
use tbframe::field_theory::lagrangians;
use tbframe::linalg::Mat;
use tbframe::metric::metric;
use tbframe::space::invert_frame;
use tbframe::tensor::TensorBlock;
use tbframe::{lookup_space, ConnKind, SpaceDefinition, SpacePoint};

const FIRST_ORDER: f64 = 1e-12;
const SECOND_ORDER: f64 = 1e-10;

fn point() -> SpacePoint<f64> {
    SpacePoint::new(POINT.0.to_vec(), POINT.1.to_vec()).unwrap()
}

fn space(name: &str) -> SpaceDefinition {
    lookup_space(name).unwrap()
}

fn close(what: &str, got: &[f64], want: &[f64], tol: f64) {
    assert_eq!(got.len(), want.len(), "{what}");
    for (k, (g, w)) in got.iter().zip(want).enumerate() {
        assert!((g - w).abs() < tol, "{what}[{k}]: {g} vs {w}");
    }
}

fn flat(m: &Mat<f64>) -> Vec<f64> {
    (0..m.n).flat_map(|i| (0..m.n).map(move |j| m[(i, j)])).collect()
}

fn blocks(what: &str, got: &[&TensorBlock<f64>], want: &[&[f64]], tol: f64) {
    for (k, (g, w)) in got.iter().zip(want).enumerate() {
        close(&format!("{what}.{k}"), &g.data, w, tol);
    }
}

#[test]
fn frames_coframes_and_nlc() {
    let p = point();
    let cases: [(&str, [&[f64; 4]; 5]); 3] = [
        ("generic2", [&GENERIC2_LH, &GENERIC2_LV, &GENERIC2_CH, &GENERIC2_CV, &GENERIC2_N]),
        ("cartan2", [&CARTAN2_LH, &CARTAN2_LV, &CARTAN2_CH, &CARTAN2_CV, &CARTAN2_N]),
        ("berwald2", [&BERWALD2_LH, &BERWALD2_LV, &BERWALD2_CH, &BERWALD2_CV, &BERWALD2_N]),
    ];
    for (name, want) in cases {
        let s = space(name);
        let f = s.frame(&p);
        let c = invert_frame(&f).unwrap();
        let n = s.evaluate_nlc(&p).unwrap();
        for (k, m) in [&f.lh, &f.lv, &c.ch, &c.cv, &n].into_iter().enumerate() {
            close(&format!("{name}.{k}"), &flat(m), want[k], FIRST_ORDER);
        }
    }
}

#[test]
fn generic2_metric_inverse() {
    let g = metric(&space("generic2"), &point()).unwrap();
    close("gh_inv", &flat(&g.gh_inv), &G2_GH_INV, FIRST_ORDER);
    close("gv_inv", &flat(&g.gv_inv), &G2_GV_INV, FIRST_ORDER);
}

#[test]
fn generic2_canonical_connection_and_torsion() {
    let (s, p) = (space("generic2"), point());
    let c = ConnKind::Canonical.coefficients(&s, &p);
    blocks(
        "canonical",
        &c.blocks(),
        &[&G2_CANONICAL_GH, &G2_CANONICAL_GV, &G2_CANONICAL_CH, &G2_CANONICAL_CV],
        FIRST_ORDER,
    );
    let t = torsion(ConnKind::Canonical, &s, &p).unwrap();
    blocks(
        "torsion",
        &t.blocks(),
        &[&G2_TORSION_LAM, &G2_TORSION_R, &G2_TORSION_C, &G2_TORSION_P, &G2_TORSION_T],
        FIRST_ORDER,
    );
}

#[test]
fn generic2_natural_connection() {
    let c = ConnKind::Natural.coefficients(&space("generic2"), &point());
    blocks(
        "natural",
        &c.blocks(),
        &[&G2_NATURAL_GH, &G2_NATURAL_GV, &G2_NATURAL_CH, &G2_NATURAL_CV],
        FIRST_ORDER,
    );
}

#[test]
fn generic2_natural_curvature() {
    let r = curvature_direct(ConnKind::Natural, &space("generic2"), &point()).unwrap();
    blocks(
        "natural curvature",
        &r.blocks(),
        &[
            &G2_NATURAL_R_HH,
            &G2_NATURAL_R_VH,
            &G2_NATURAL_P_H,
            &G2_NATURAL_P_V,
            &G2_NATURAL_S_H,
            &G2_NATURAL_S_V,
        ],
        SECOND_ORDER,
    );
}

#[test]
fn generic2_lagrangians() {
    let l = lagrangians(&space("generic2"), &point()).unwrap();
    close(
        "lagrangians",
        &[l.h_scalar, l.v_scalar, l.det_h, l.det_v],
        &[G2_H_SCALAR, G2_V_SCALAR, G2_DET_H, G2_DET_V],
        FIRST_ORDER,
    );
}

#[test]
fn generic3_lagrangians() {
    let p = SpacePoint::new(POINT3.0.to_vec(), POINT3.1.to_vec()).unwrap();
    let l = lagrangians(&space("generic3"), &p).unwrap();
    close(
        "lagrangians",
        &[l.h_scalar, l.v_scalar, l.det_h, l.det_v],
        &[G3_H_SCALAR, G3_V_SCALAR, G3_DET_H, G3_DET_V],
        FIRST_ORDER,
    );
}
