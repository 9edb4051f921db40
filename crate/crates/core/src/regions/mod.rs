//! Mutual-information regions over product inputs with time sharing, and
//! the smallest source-channel rate `b` at which a scaled region covers an
//! entropy requirement.

mod baselines;
mod hull;
mod scale;

use serde::{Deserialize, Serialize};

pub use baselines::{
    full_coop_minrate, informational_separation_minrate, sw_region_corner, CoopSolution,
};
pub use hull::{achievable_hull, achievable_hull_for, refine_toward, Candidate, HullOptions, RegionHull};
pub use scale::{margin_at, min_scale_b, supporting_direction, MarginSolution, ScaleSolution, DEFAULT_BISECTION_TOL};

/// Per-receiver triples `(I(X1;Y|X2,Q), I(X2;Y|X1,Q), I(X1,X2;Y|Q))`,
/// concatenated over receivers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RateVector(pub Vec<f64>);

/// Per-receiver entropy triples `(h1, h2, hsum)`, concatenated over receivers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EntropyVector(pub Vec<f64>);

impl RateVector {
    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl EntropyVector {
    pub fn triple(h1: f64, h2: f64, hsum: f64) -> Self {
        Self(vec![h1, h2, hsum])
    }

    pub fn concat(parts: &[EntropyVector]) -> Self {
        Self(parts.iter().flat_map(|p| p.0.iter().copied()).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self(self.0.iter().map(|v| v * c).collect())
    }

    /// `hsum <= h1 + h2` and nonnegativity, per triple.
    pub fn is_consistent(&self) -> bool {
        self.0.len() % 3 == 0
            && self.0.iter().all(|&v| v >= -1e-12)
            && self.0.chunks(3).all(|t| t[2] <= t[0] + t[1] + 1e-9)
    }
}
