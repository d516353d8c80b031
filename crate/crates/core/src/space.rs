//! Points on TM, frame fields, nonlinear connections and the space catalog.

use crate::error::{FrameBlock, GeomError, Result};
use crate::linalg::Mat;
use crate::scalar::{Dual, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// A point (x, y) of TM; `x` positional, `y` directional.
#[derive(Clone, Debug, PartialEq)]
pub struct SpacePoint<S> {
    pub x: Vec<S>,
    pub y: Vec<S>,
}

impl SpacePoint<f64> {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(GeomError::DimensionMismatch { expected: x.len(), got: y.len() });
        }
        if y.iter().all(|v| *v == 0.0) {
            return Err(GeomError::InvalidArgument("y = 0 lies on the zero section".into()));
        }
        Ok(SpacePoint { x, y })
    }

    /// Parses `"x1,..,xn;y1,..,yn"`.
    pub fn parse(s: &str) -> Result<Self> {
        let (xs, ys) = s
            .split_once(';')
            .ok_or_else(|| GeomError::InvalidArgument(format!("point `{s}` lacks `;`")))?;
        let nums = |part: &str| -> Result<Vec<f64>> {
            part.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<f64>()
                        .map_err(|_| GeomError::InvalidArgument(format!("bad number `{t}`")))
                })
                .collect()
        };
        SpacePoint::new(nums(xs)?, nums(ys)?)
    }

    pub fn y_norm(&self) -> f64 {
        self.y.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn lift<S: Scalar>(&self) -> SpacePoint<S> {
        SpacePoint {
            x: self.x.iter().map(|&v| S::c(v)).collect(),
            y: self.y.iter().map(|&v| S::c(v)).collect(),
        }
    }

    /// Same x, y scaled by `t`.
    pub fn scale_y(&self, t: f64) -> Self {
        SpacePoint { x: self.x.clone(), y: self.y.iter().map(|v| v * t).collect() }
    }

    /// Coordinate `k` in the 2n ordering (x first, then y).
    pub fn coord(&self, k: usize) -> f64 {
        let n = self.n();
        if k < n {
            self.x[k]
        } else {
            self.y[k - n]
        }
    }

    pub fn shifted(&self, k: usize, h: f64) -> Self {
        let mut q = self.clone();
        let n = self.n();
        if k < n {
            q.x[k] += h;
        } else {
            q.y[k - n] += h;
        }
        q
    }
}

impl<S: Scalar> SpacePoint<S> {
    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn values(&self) -> SpacePoint<f64> {
        SpacePoint {
            x: self.x.iter().map(|v| v.value()).collect(),
            y: self.y.iter().map(|v| v.value()).collect(),
        }
    }

    /// Dual point moving with velocity `(dx, dy)`.
    pub fn along(&self, dx: &[S], dy: &[S]) -> SpacePoint<Dual<S>> {
        SpacePoint {
            x: self.x.iter().zip(dx).map(|(&v, &d)| Dual::new(v, d)).collect(),
            y: self.y.iter().zip(dy).map(|(&v, &d)| Dual::new(v, d)).collect(),
        }
    }

    /// Dual point seeded along coordinate `k` of the 2n ordering.
    pub fn seed(&self, k: usize) -> SpacePoint<Dual<S>> {
        let n = self.n();
        let unit = |j: usize| if j == k { S::one() } else { S::zero() };
        let dx: Vec<S> = (0..n).map(unit).collect();
        let dy: Vec<S> = (0..n).map(|a| unit(n + a)).collect();
        self.along(&dx, &dy)
    }
}

/// Axis-aligned box in x and an annulus in |y|.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Domain {
    pub x_min: Vec<f64>,
    pub x_max: Vec<f64>,
    pub r_min: f64,
    pub r_max: f64,
}

impl Domain {
    pub fn standard(n: usize) -> Self {
        Domain { x_min: vec![-1.0; n], x_max: vec![1.0; n], r_min: 0.5, r_max: 1.5 }
    }

    pub fn contains(&self, p: &SpacePoint<f64>) -> bool {
        let r = p.y_norm();
        p.x.iter().enumerate().all(|(k, &v)| v >= self.x_min[k] && v <= self.x_max[k])
            && r >= self.r_min
            && r <= self.r_max
    }
}

/// `lh[(i, α)] = λ_i^α`, `lv[(i, a)] = λ_i^a`.
#[derive(Clone, Debug, PartialEq)]
pub struct FramePair<S> {
    pub lh: Mat<S>,
    pub lv: Mat<S>,
}

/// `ch[(i, α)] = λ_i_α`, `cv[(i, a)] = λ_i_a`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoFramePair<S> {
    pub ch: Mat<S>,
    pub cv: Mat<S>,
}

pub const SINGULAR_DET: f64 = 1e-10;

/// Inverts both blocks; the coframe is the inverse transpose.
pub fn invert_frame(f: &FramePair<f64>) -> Result<CoFramePair<f64>> {
    for (m, block) in [(&f.lh, FrameBlock::Horizontal), (&f.lv, FrameBlock::Vertical)] {
        let det = m.det();
        if det.abs() < SINGULAR_DET {
            return Err(GeomError::SingularFrame { block, det });
        }
    }
    Ok(coframe_of(f))
}

/// Unchecked generic inversion used inside derivative computations.
pub fn coframe_of<S: Scalar>(f: &FramePair<S>) -> CoFramePair<S> {
    let inv = |m: &Mat<S>| m.inverse().expect("singular frame").transpose();
    CoFramePair { ch: inv(&f.lh), cv: inv(&f.lv) }
}

/// Max deviation of the four Kronecker relations between a frame and coframe.
pub fn kronecker_residual(f: &FramePair<f64>, cf: &CoFramePair<f64>) -> f64 {
    let n = f.lh.n;
    let mut worst: f64 = 0.0;
    for (l, c) in [(&f.lh, &cf.ch), (&f.lv, &cf.cv)] {
        for a in 0..n {
            for b in 0..n {
                let e = if a == b { 1.0 } else { 0.0 };
                let comp: f64 = (0..n).map(|i| l[(i, a)] * c[(i, b)]).sum();
                let mesh: f64 = (0..n).map(|k| l[(a, k)] * c[(b, k)]).sum();
                worst = worst.max((comp - e).abs()).max((mesh - e).abs());
            }
        }
    }
    worst
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Generic,
    Cartan,
    Berwald,
    Cb,
}

impl Label {
    pub fn as_str(&self) -> &'static str {
        match self {
            Label::Generic => "generic",
            Label::Cartan => "cartan",
            Label::Berwald => "berwald",
            Label::Cb => "cb",
        }
    }
    pub fn is_cartan(&self) -> bool {
        matches!(self, Label::Cartan | Label::Cb)
    }
    pub fn is_berwald(&self) -> bool {
        matches!(self, Label::Berwald | Label::Cb)
    }
}

/// Closed-form field families backing the catalog.
#[derive(Clone, Debug, PartialEq)]
pub enum Fields {
    Flat { n: usize, scale: f64 },
    Generic { n: usize },
    Cartan2,
    /// x-only frames; `phi` adds the non-Cartan offset to N.
    Berwald2 { phi: bool },
    /// Berwald type with a y-dependent vertical frame.
    Berwald2v,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpaceDefinition {
    pub name: String,
    pub n: usize,
    pub domain: Domain,
    pub fields: Fields,
    pub claim: Label,
    pub summary: &'static str,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpaceDescriptor {
    pub name: String,
    pub n: usize,
    pub domain: Domain,
    pub classification: Label,
    pub summary: String,
}

pub const CATALOG: [&str; 5] = ["flat", "generic2", "cartan2", "berwald2", "cb2"];
pub const AUXILIARY: [&str; 3] = ["flat3", "generic3", "berwald2v"];

fn make(name: &str, fields: Fields, claim: Label, summary: &'static str) -> SpaceDefinition {
    let n = match fields {
        Fields::Flat { n, .. } | Fields::Generic { n } => n,
        _ => 2,
    };
    SpaceDefinition { name: name.into(), n, domain: Domain::standard(n), fields, claim, summary }
}

pub fn builtin_space(name: &str) -> Result<SpaceDefinition> {
    Ok(match name {
        "flat" => make("flat", Fields::Flat { n: 2, scale: 1.0 }, Label::Cb, "identity frames, N = 0"),
        "generic2" => make(
            "generic2",
            Fields::Generic { n: 2 },
            Label::Generic,
            "x- and y-dependent frames, curved N; no regime condition holds",
        ),
        "cartan2" => make(
            "cartan2",
            Fields::Cartan2,
            Label::Cartan,
            "rotation vertical frame, y-dependent horizontal frame, N = y^b λ_i^a ∂_μ λ_i_b",
        ),
        "berwald2" => make(
            "berwald2",
            Fields::Berwald2 { phi: true },
            Label::Berwald,
            "x-only frames, N = y^b Γ^a_bμ(x) + φ^a_μ(x)",
        ),
        "cb2" => make("cb2", Fields::Berwald2 { phi: false }, Label::Cb, "x-only frames, N = y^b Γ^a_bμ(x)"),
        _ => return Err(GeomError::UnknownSpace(name.into())),
    })
}

/// Test fixtures outside the five-entry catalog.
pub fn auxiliary_space(name: &str) -> Result<SpaceDefinition> {
    Ok(match name {
        "flat3" => make("flat3", Fields::Flat { n: 3, scale: 1.0 }, Label::Cb, "identity frames, n = 3"),
        "generic3" => make("generic3", Fields::Generic { n: 3 }, Label::Generic, "generic family at n = 3"),
        "berwald2v" => make(
            "berwald2v",
            Fields::Berwald2v,
            Label::Berwald,
            "Berwald type with y-dependent vertical frame (T ≠ 0, R ≠ 0)",
        ),
        _ => return Err(GeomError::UnknownSpace(name.into())),
    })
}

/// Catalog first, then auxiliary fixtures.
pub fn lookup_space(name: &str) -> Result<SpaceDefinition> {
    builtin_space(name).or_else(|_| auxiliary_space(name))
}

pub fn catalog() -> Vec<SpaceDefinition> {
    CATALOG.iter().map(|n| builtin_space(n).unwrap()).collect()
}

/// Uniform scaling of the flat frames, `λ = c·δ`.
pub fn scaled_flat(n: usize, c: f64) -> SpaceDefinition {
    make("flat-scaled", Fields::Flat { n, scale: c }, Label::Cb, "constant multiple of the identity frames")
}

fn kron<S: Scalar>(i: usize, j: usize) -> S {
    if i == j {
        S::one()
    } else {
        S::zero()
    }
}

fn berwald_lh<S: Scalar>(x: &[S]) -> Mat<S> {
    let k = 0.15;
    Mat::from_fn(2, |i, j| {
        let t = match (i, j) {
            (0, 0) => x[0].sin(),
            (0, 1) => (x[0] + x[1]).cos(),
            (1, 0) => (x[1] - x[0]).sin(),
            _ => (x[1].scale(2.0)).cos(),
        };
        kron::<S>(i, j) + t.scale(k)
    })
}

fn berwald_lv<S: Scalar>(x: &[S]) -> Mat<S> {
    let k = 0.15;
    Mat::from_fn(2, |i, j| {
        let t = match (i, j) {
            (0, 0) => x[1].cos(),
            (0, 1) => (x[0] + x[1]).sin(),
            (1, 0) => (x[0].scale(2.0)).sin(),
            _ => (x[0] - x[1]).cos(),
        };
        kron::<S>(i, j) + t.scale(k)
    })
}

/// φ^a_μ(x) of berwald2 (row a, column μ).
pub fn berwald_phi<S: Scalar>(x: &[S]) -> Mat<S> {
    Mat::from_fn(2, |a, m| match (a, m) {
        (0, 0) => (S::one() + x[1].sin().scale(0.5)).scale(0.1),
        (0, 1) => x[0].cos().scale(0.05),
        (1, 0) => (x[0] + x[1]).sin().scale(0.03),
        _ => S::c(0.08),
    })
}

/// Γ^a_{bμ}(x) = λ_i^a ∂_μ λ_i_b for an x-only vertical frame; entry `[a][b][μ]`.
fn xonly_vertical_connection<S: Scalar>(x: &[S]) -> Vec<S> {
    let n = 2;
    let lv = berwald_lv(x);
    let mut out = vec![S::zero(); n * n * n];
    for m in 0..n {
        let xd: Vec<Dual<S>> =
            (0..n).map(|k| Dual::new(x[k], if k == m { S::one() } else { S::zero() })).collect();
        let cv = berwald_lv(&xd).inverse().expect("singular frame").transpose();
        for a in 0..n {
            for b in 0..n {
                let mut s = S::zero();
                for i in 0..n {
                    s += lv[(i, a)] * cv[(i, b)].du;
                }
                out[(a * n + b) * n + m] = s;
            }
        }
    }
    out
}

fn aux_a<S: Scalar>(x: &[S]) -> S {
    S::one() + (x[0] - x[1]).sin().scale(0.2)
}

fn aux_psi<S: Scalar>(x: &[S]) -> S {
    (x[0].sin() * x[1].cos()).scale(0.3)
}

fn aux_kappa<S: Scalar>(w: S) -> Mat<S> {
    Mat::from_fn(2, |i, j| match (i, j) {
        (0, 0) => S::one() + w.sin().scale(0.2),
        (0, 1) => w.cos().scale(0.1),
        (1, 0) => w.scale(2.0).sin().scale(0.15),
        _ => S::one() + w.cos().scale(0.1),
    })
}

impl SpaceDefinition {
    pub fn descriptor(&self) -> SpaceDescriptor {
        SpaceDescriptor {
            name: self.name.clone(),
            n: self.n,
            domain: self.domain.clone(),
            classification: self.claim,
            summary: self.summary.into(),
        }
    }

    pub fn check_point(&self, p: &SpacePoint<f64>) -> Result<()> {
        if p.n() != self.n {
            return Err(GeomError::DimensionMismatch { expected: self.n, got: p.n() });
        }
        if !self.domain.contains(p) {
            return Err(GeomError::PointOutsideDomain {
                space: self.name.clone(),
                detail: format!("x = {:?}, |y| = {:.4}", p.x, p.y_norm()),
            });
        }
        Ok(())
    }

    /// λ_i^α(p), λ_i^a(p) without domain checks.
    pub fn frame<S: Scalar>(&self, p: &SpacePoint<S>) -> FramePair<S> {
        let (x, y) = (&p.x, &p.y);
        match self.fields {
            Fields::Flat { n, scale } => {
                let m = Mat::identity(n).scaled(S::c(scale));
                FramePair { lh: m.clone(), lv: m }
            }
            Fields::Generic { n } => {
                let lh = Mat::from_fn(n, |i, al| {
                    let arg = x[al]
                        + x[(al + 1) % n].scale((i + 1) as f64)
                        + y[(i + al) % n].scale((al + 1) as f64);
                    kron::<S>(i, al) + arg.sin().scale(0.1)
                });
                let lv = Mat::from_fn(n, |i, a| {
                    let arg = x[(i + a) % n] + y[a].scale((a + 1) as f64)
                        - y[(a + 1) % n].scale((i + 1) as f64);
                    kron::<S>(i, a) + arg.cos().scale(0.1)
                });
                FramePair { lh, lv }
            }
            Fields::Cartan2 => {
                let lh = Mat::from_fn(2, |i, al| {
                    let t = match (i, al) {
                        (0, 0) => (x[0] + y[0]).sin(),
                        (0, 1) => (x[1] + y[1].scale(2.0)).cos(),
                        (1, 0) => (x[0] - y[0] + y[1]).cos(),
                        _ => (x[1].scale(2.0) + y[0] * y[1]).sin(),
                    };
                    kron::<S>(i, al) + t.scale(0.1)
                });
                let th = x[0] + x[1];
                let (c, s) = (th.cos(), th.sin());
                let lv = Mat { n: 2, data: vec![c, s, -s, c] };
                FramePair { lh, lv }
            }
            Fields::Berwald2 { .. } => FramePair { lh: berwald_lh(x), lv: berwald_lv(x) },
            Fields::Berwald2v => {
                let a = aux_a(x);
                let w = a * y[1] + aux_psi(x);
                let cv = aux_kappa(w).scaled(a);
                FramePair { lh: berwald_lh(x), lv: cv.inverse().expect("singular frame").transpose() }
            }
        }
    }

    /// N^a_μ(p) as a matrix with row a, column μ.
    pub fn nlc<S: Scalar>(&self, p: &SpacePoint<S>) -> Mat<S> {
        let (x, y) = (&p.x, &p.y);
        match self.fields {
            Fields::Flat { n, .. } => Mat::zeros(n),
            Fields::Generic { n } => Mat::from_fn(n, |a, m| {
                (y[a] * x[m].cos() + (x[(m + 1) % n] + y[(a + m) % n]).sin()).scale(0.1)
            }),
            Fields::Cartan2 => Mat { n: 2, data: vec![y[1], y[1], -y[0], -y[0]] },
            Fields::Berwald2 { phi } => {
                let g = xonly_vertical_connection(x);
                let mut nl = Mat::from_fn(2, |a, m| {
                    let mut s = S::zero();
                    for b in 0..2 {
                        s += y[b] * g[(a * 2 + b) * 2 + m];
                    }
                    s
                });
                if phi {
                    let f = berwald_phi(x);
                    for k in 0..4 {
                        nl.data[k] += f.data[k];
                    }
                }
                nl
            }
            Fields::Berwald2v => {
                let a = aux_a(x);
                let da = (x[0] - x[1]).cos().scale(0.2);
                let dln = [da / a, -da / a];
                let dpsi = [(x[0].cos() * x[1].cos()).scale(0.3), -(x[0].sin() * x[1].sin()).scale(0.3)];
                let phi0 = [x[1].cos().scale(0.1), x[0].scale(0.1)];
                Mat::from_fn(2, |r, m| {
                    if r == 0 {
                        y[0] * dln[m] + phi0[m]
                    } else {
                        y[1] * dln[m] + dpsi[m] / a
                    }
                })
            }
        }
    }

    pub fn evaluate_frame(&self, p: &SpacePoint<f64>) -> Result<FramePair<f64>> {
        self.check_point(p)?;
        Ok(self.frame(p))
    }

    pub fn evaluate_nlc(&self, p: &SpacePoint<f64>) -> Result<Mat<f64>> {
        self.check_point(p)?;
        Ok(self.nlc(p))
    }

    /// Seeded sample of domain points (ChaCha8; x uniform, y by rejection in the annulus).
    pub fn sample(&self, count: usize, seed: u64) -> Vec<SpacePoint<f64>> {
        sample_domain(&self.domain, count, seed)
    }
}

pub fn sample_domain(d: &Domain, count: usize, seed: u64) -> Vec<SpacePoint<f64>> {
    let n = d.x_min.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let x: Vec<f64> = (0..n).map(|k| rng.gen_range(d.x_min[k]..=d.x_max[k])).collect();
        let y = loop {
            let y: Vec<f64> = (0..n).map(|_| rng.gen_range(-d.r_max..=d.r_max)).collect();
            let r = y.iter().map(|v| v * v).sum::<f64>().sqrt();
            if r >= d.r_min && r <= d.r_max {
                break y;
            }
        };
        out.push(SpacePoint { x, y });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_point() {
        let p = SpacePoint::parse("0.3,-0.2;0.7,0.9").unwrap();
        assert_eq!(p.x, vec![0.3, -0.2]);
        assert_eq!(p.y, vec![0.7, 0.9]);
        assert!(SpacePoint::parse("0.3,-0.2").is_err());
        assert!(SpacePoint::parse("0.3;0.7,0.9").is_err());
        assert!(SpacePoint::parse("0,0;0,0").is_err());
    }

    #[test]
    fn diagonal_inverse() {
        let f = FramePair {
            lh: Mat::from_rows(&[vec![2.0, 0.0], vec![0.0, 4.0]]),
            lv: Mat::identity(2),
        };
        let cf = invert_frame(&f).unwrap();
        assert_eq!(cf.ch, Mat::from_rows(&[vec![0.5, 0.0], vec![0.0, 0.25]]));
        assert_eq!(cf.cv, Mat::identity(2));
    }

    #[test]
    fn singular_block_is_named() {
        let f = FramePair { lh: Mat::identity(2), lv: Mat::from_rows(&[vec![1.0, 2.0], vec![0.5, 1.0]]) };
        match invert_frame(&f) {
            Err(GeomError::SingularFrame { block, .. }) => assert_eq!(block, FrameBlock::Vertical),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn outside_domain_rejected() {
        let s = builtin_space("generic2").unwrap();
        let p = SpacePoint::new(vec![2.0, 0.0], vec![1.0, 0.0]).unwrap();
        assert!(matches!(s.evaluate_frame(&p), Err(GeomError::PointOutsideDomain { .. })));
        let q = SpacePoint::new(vec![0.0, 0.0], vec![0.1, 0.0]).unwrap();
        assert!(s.evaluate_nlc(&q).is_err());
        let r = SpacePoint::new(vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(s.evaluate_frame(&r), Err(GeomError::DimensionMismatch { .. })));
    }

    #[test]
    fn sampling_is_seeded_and_in_domain() {
        let s = builtin_space("cartan2").unwrap();
        let a = s.sample(30, 42);
        let b = s.sample(30, 42);
        assert_eq!(a, b);
        assert_ne!(a, s.sample(30, 43));
        assert!(a.iter().all(|p| s.domain.contains(p)));
    }

    #[test]
    fn unknown_space() {
        assert_eq!(builtin_space("nope"), Err(GeomError::UnknownSpace("nope".into())));
        assert!(builtin_space("berwald2v").is_err());
        assert!(lookup_space("berwald2v").is_ok());
    }
}
