//! Check records, residual accumulation over sample points, report documents.

use crate::space::SpaceDescriptor;
use serde::Serialize;
use std::collections::BTreeMap;

/// Scale below which a passing check counts as degenerate (both sides vanish).
pub const DEGENERATE_SCALE: f64 = 1e-12;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Degenerate,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Degenerate => "degenerate",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    /// residual must stay below tolerance
    Residual,
    /// quantity is expected nonzero; a zero observation is degenerate, never a failure
    Nonzero,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub expect: Expect,
    pub max_residual: f64,
    /// largest magnitude of the compared quantities
    pub scale: f64,
    pub tolerance: f64,
    pub status: Status,
}

impl CheckRecord {
    pub fn residual(id: &str, anchor: &str, residual: f64, scale: f64, tol: f64) -> Self {
        let mut r = CheckRecord {
            id: id.into(),
            anchor: anchor.into(),
            expect: Expect::Residual,
            max_residual: residual,
            scale,
            tolerance: tol,
            status: Status::Pass,
        };
        r.settle();
        r
    }

    pub fn nonzero(id: &str, anchor: &str, observed: f64, tol: f64) -> Self {
        let mut r = CheckRecord {
            id: id.into(),
            anchor: anchor.into(),
            expect: Expect::Nonzero,
            max_residual: 0.0,
            scale: observed,
            tolerance: tol,
            status: Status::Pass,
        };
        r.settle();
        r
    }

    /// A failed precondition: the suite did not run.
    pub fn failed(id: &str, anchor: &str, residual: f64, tol: f64) -> Self {
        CheckRecord {
            id: id.into(),
            anchor: anchor.into(),
            expect: Expect::Residual,
            max_residual: residual,
            scale: residual,
            tolerance: tol,
            status: Status::Fail,
        }
    }

    fn settle(&mut self) {
        self.status = match self.expect {
            Expect::Residual if !(self.max_residual < self.tolerance) => Status::Fail,
            Expect::Residual if self.scale < DEGENERATE_SCALE => Status::Degenerate,
            Expect::Residual => Status::Pass,
            Expect::Nonzero if self.scale > self.tolerance => Status::Pass,
            Expect::Nonzero => Status::Degenerate,
        };
    }

    /// Max-merge with another observation of the same check.
    pub fn merge(&mut self, o: &CheckRecord) {
        self.max_residual = nan_max(self.max_residual, o.max_residual);
        self.scale = nan_max(self.scale, o.scale);
        self.settle();
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

/// Ordered accumulator: first-seen order, max-merged per id.
#[derive(Clone, Debug, Default)]
pub struct CheckSet {
    order: Vec<String>,
    map: BTreeMap<String, CheckRecord>,
}

impl CheckSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, r: CheckRecord) {
        match self.map.get_mut(&r.id) {
            Some(e) => e.merge(&r),
            None => {
                self.order.push(r.id.clone());
                self.map.insert(r.id.clone(), r);
            }
        }
    }

    pub fn residual(&mut self, id: &str, anchor: &str, residual: f64, scale: f64, tol: f64) {
        self.push(CheckRecord::residual(id, anchor, residual, scale, tol));
    }

    pub fn nonzero(&mut self, id: &str, anchor: &str, observed: f64, tol: f64) {
        self.push(CheckRecord::nonzero(id, anchor, observed, tol));
    }

    pub fn extend(&mut self, rs: impl IntoIterator<Item = CheckRecord>) {
        for r in rs {
            self.push(r);
        }
    }

    pub fn get(&self, id: &str) -> Option<&CheckRecord> {
        self.map.get(id)
    }

    pub fn into_records(mut self) -> Vec<CheckRecord> {
        self.order.iter().map(|k| self.map.remove(k).expect("id recorded")).collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub degenerate: usize,
    pub overall_pass: bool,
}

impl Summary {
    pub fn of(records: &[CheckRecord]) -> Self {
        let count = |s: Status| records.iter().filter(|r| r.status == s).count();
        let fail = count(Status::Fail);
        Summary {
            total: records.len(),
            pass: count(Status::Pass),
            fail,
            degenerate: count(Status::Degenerate),
            overall_pass: fail == 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDocument {
    pub tool: String,
    pub tool_version: String,
    pub schema_version: u32,
    pub space: SpaceDescriptor,
    pub suite: String,
    pub samples: usize,
    pub seed: u64,
    pub tolerances: crate::tolerances::Tolerances,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}
