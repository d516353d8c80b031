//! Object selectors for `eval`: each name maps to one library operation.

use serde::Serialize;
use tbframe::connections::{basic_vector, contortion, torsion};
use tbframe::curvature::{contract, curvature_direct};
use tbframe::field_theory::lagrangians;
use tbframe::linalg::Mat;
use tbframe::metric::metric;
use tbframe::space::invert_frame;
use tbframe::tensor::{TensorBlock, HL, HU, VL, VU};
use tbframe::wtensor::w_via_commutator;
use tbframe::{ConnKind, GeomError, Result, SpaceDefinition, SpacePoint};

#[derive(Debug, Serialize)]
pub struct BlockOut {
    pub name: String,
    /// slot labels, e.g. `["H^", "H_", "H_"]`
    pub slots: Vec<&'static str>,
    pub shape: Vec<usize>,
    /// row-major
    pub data: Vec<f64>,
    pub max_abs: f64,
}

pub const OBJECTS: [&str; 13] = [
    "frame",
    "coframe",
    "metric",
    "nlc",
    "nlc_curvature",
    "connection.<kind>",
    "torsion.<kind>",
    "contortion",
    "basic_vector",
    "curvature.<kind>",
    "contractions.<kind>",
    "wtensor.<kind>",
    "lagrangians",
];

fn block(name: &str, t: &TensorBlock<f64>) -> BlockOut {
    BlockOut {
        name: name.into(),
        slots: t.sig.iter().map(|s| s.label()).collect(),
        shape: vec![t.n; t.sig.len()],
        data: t.data.clone(),
        max_abs: t.max_abs(),
    }
}

fn mat(name: &str, m: &Mat<f64>, rows: tbframe::tensor::Slot, cols: tbframe::tensor::Slot) -> BlockOut {
    block(name, &TensorBlock::from_fn(m.n, &[rows, cols], |i| m[(i[0], i[1])]))
}

fn scalar(name: &str, v: f64) -> BlockOut {
    BlockOut { name: name.into(), slots: vec![], shape: vec![], data: vec![v], max_abs: v.abs() }
}

fn named<'a>(names: &[&str], blocks: impl IntoIterator<Item = &'a TensorBlock<f64>>) -> Vec<BlockOut> {
    names.iter().zip(blocks).map(|(n, b)| block(n, b)).collect()
}

fn kind(sel: &str, rest: Option<&str>) -> Result<ConnKind> {
    let k = rest.ok_or_else(|| GeomError::UnknownObject(format!("`{sel}` needs a connection suffix")))?;
    ConnKind::parse(k)
}

pub fn evaluate(space: &SpaceDefinition, p: &SpacePoint<f64>, sel: &str) -> Result<Vec<BlockOut>> {
    space.check_point(p)?;
    let (head, rest) = match sel.split_once('.') {
        Some((h, r)) => (h, Some(r)),
        None => (sel, None),
    };
    let mesh = tbframe::tensor::MESH;
    Ok(match (head, rest) {
        ("frame", None) => {
            let f = space.frame(p);
            vec![mat("lambda_h", &f.lh, mesh, HU), mat("lambda_v", &f.lv, mesh, VU)]
        }
        ("coframe", None) => {
            let c = invert_frame(&space.frame(p))?;
            vec![mat("lambda_h_low", &c.ch, mesh, HL), mat("lambda_v_low", &c.cv, mesh, VL)]
        }
        ("metric", None) => {
            let g = metric(space, p)?;
            vec![mat("g_h", &g.gh, HL, HL), mat("g_v", &g.gv, VL, VL)]
        }
        ("nlc", None) => vec![mat("N", &space.evaluate_nlc(p)?, VU, HL)],
        ("nlc_curvature", None) => vec![block("R", &tbframe::calculus::nlc_curvature(space, p)?)],
        ("connection", Some(_)) => {
            let c = kind(head, rest)?.coefficients(space, p);
            named(&["Gamma_h", "Gamma_v", "C_h", "C_v"], c.blocks())
        }
        ("torsion", Some(_)) => {
            let t = torsion(kind(head, rest)?, space, p)?;
            named(&tbframe::connections::TORSION_NAMES, t.blocks())
        }
        ("contortion", None) => {
            let g = contortion(space, p)?;
            named(&["gamma_hh", "gamma_vh", "gamma_hv", "gamma_vv"], g.blocks())
        }
        ("basic_vector", None) => {
            let t = torsion(ConnKind::Canonical, space, p)?;
            let (b, _) = basic_vector(&t, &contortion(space, p)?);
            vec![block("C_h", &b.ch), block("C_v", &b.cv)]
        }
        ("curvature", Some(_)) => {
            let c = curvature_direct(kind(head, rest)?, space, p)?;
            named(&tbframe::curvature::CURVATURE_NAMES, c.blocks())
        }
        ("contractions", Some(_)) => {
            let (c, _) = contract(kind(head, rest)?, space, p)?;
            vec![
                block("Ric_h", &c.ric_h),
                scalar("scalar_h", c.scalar_h),
                block("P_hc", &c.p_hc),
                block("P_vc", &c.p_vc),
                block("Ric_v", &c.ric_v),
                scalar("scalar_v", c.scalar_v),
            ]
        }
        ("wtensor", Some(_)) => {
            let w = w_via_commutator(kind(head, rest)?, space, p)?;
            named(&tbframe::wtensor::W_NAMES, w.blocks())
        }
        ("lagrangians", None) => {
            let l = lagrangians(space, p)?;
            let n = space.n;
            let m = |rows: &Vec<Vec<f64>>| Mat::from_fn(n, |i, j| rows[i][j]);
            vec![
                mat("H", &m(&l.h_ab), HL, HL),
                scalar("H_scalar", l.h_scalar),
                scalar("det_h", l.det_h),
                scalar("H_density", l.h_density),
                mat("V", &m(&l.v_ab), VL, VL),
                scalar("V_scalar", l.v_scalar),
                scalar("det_v", l.det_v),
                scalar("V_density", l.v_density),
            ]
        }
        _ => return Err(GeomError::UnknownObject(sel.into())),
    })
}

/// Indexed text rendering, one entry per line.
pub fn render(blocks: &[BlockOut]) -> String {
    let mut out = String::new();
    for b in blocks {
        out.push_str(&format!("{} [{}]  max|.| = {:.6e}\n", b.name, b.slots.join(" "), b.max_abs));
        for (k, v) in b.data.iter().enumerate() {
            let mut idx = Vec::with_capacity(b.shape.len());
            let mut r = k;
            for d in b.shape.iter().rev() {
                idx.push(r % d);
                r /= d;
            }
            idx.reverse();
            let label: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
            out.push_str(&format!("  [{}] {:>20.12e}\n", label.join(","), v));
        }
    }
    out
}
