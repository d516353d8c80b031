//! Tolerance tiers.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    /// pointwise algebra, no derivatives
    pub algebraic: f64,
    /// identities involving first derivatives
    pub d1: f64,
    /// identities involving second derivatives
    pub d2: f64,
    /// regime conditions and their consequences
    pub regime: f64,
    /// degree-0 homogeneity
    pub homogeneity: f64,
    /// vanishing canonical curvature
    pub flat_curvature: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { algebraic: 1e-12, d1: 1e-10, d2: 1e-8, regime: 1e-9, homogeneity: 1e-10, flat_curvature: 1e-9 }
    }
}

/// Residuals above this are a definite failure of a regime condition.
pub const REGIME_FAIL: f64 = 1e-3;

impl Tolerances {
    pub fn validate(&self) -> crate::Result<()> {
        let all = [self.algebraic, self.d1, self.d2, self.regime, self.homogeneity, self.flat_curvature];
        if all.iter().all(|t| t.is_finite() && *t > 0.0) {
            Ok(())
        } else {
            Err(crate::GeomError::InvalidArgument("tolerances must be positive".into()))
        }
    }
}
