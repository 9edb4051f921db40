//! Per-theorem achievability checks returning [`Verdict`]s.
//!
//! Each checker verifies the structural hypotheses of its setting, builds
//! the entropy requirement and the matching mutual-information region, and
//! reports whether a source-channel rate is achievable, the infimum rate
//! `b_min`, the slack at the evaluated rate, and a witness input.

mod compound;
mod interference;
mod mac;
mod search;
mod sufficient;
mod twoway;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use compound::{minrate_cmac, minrate_ic, CmacTheorem, IcTheorem};
pub use interference::{strong_interference_check, InterferenceReport};
pub use mac::{minrate_baseline, minrate_mac, Baseline, MacTheorem};
pub use sufficient::{check_sufficient_b1, evaluate_b1_conditions, Condition, Scenario};
pub use twoway::{twoway_achievable, twoway_conditions, twoway_outer, twoway_outer_verdict, OuterBound};

use crate::prob::{ConditionedInput, JointPmf, ProductInput, StructureResult, NORMALIZATION_TOL};
use crate::regions::{margin_at, min_scale_b, EntropyVector, HullOptions, RegionHull};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Sufficient,
    Necessary,
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Achievable {
    Yes,
    No,
    Boundary,
    /// A sufficient condition was searched and no witness was found.
    NoWitness,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Sufficient => "sufficient",
            Mode::Necessary => "necessary",
            Mode::Exact => "exact",
        })
    }
}

impl fmt::Display for Achievable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Achievable::Yes => "yes",
            Achievable::No => "no",
            Achievable::Boundary => "boundary",
            Achievable::NoWitness => "no-witness",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// Time sharing over independent inputs.
    Product { input: ProductInput },
    /// Source-dependent inputs `p(q) p(x1|q,s1) p(x2|q,s2)`.
    Conditioned { input: ConditionedInput },
    /// Joint input `p(x1, x2)`, row-major.
    Joint { pxx: Vec<f64> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Verdict {
    pub theorem: String,
    pub mode: Mode,
    pub b_query: Option<f64>,
    pub achievable: Achievable,
    pub b_min: Option<f64>,
    /// Smallest slack `RHS - LHS` over the conditions at the evaluated rate.
    pub margin: f64,
    pub boundary_tol: f64,
    pub entropy_vector: Vec<f64>,
    pub witness_rates: Option<Vec<f64>>,
    pub witness: Option<Witness>,
    pub preconditions: Vec<StructureResult>,
    pub interference: Option<InterferenceReport>,
    pub notes: Vec<String>,
}

impl Verdict {
    /// Rate at which the margin was evaluated.
    pub fn b_evaluated(&self) -> Option<f64> {
        self.b_query.or(self.b_min)
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Finest per-block grid resolution.
    pub resolution: f64,
    /// Cap on product-grid size; the resolution is coarsened to fit.
    pub max_grid: u128,
    pub restarts: usize,
    pub rounds: usize,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { resolution: 0.05, max_grid: 200_000, restarts: 8, rounds: 200, seed: 0x5eed }
    }
}

#[derive(Clone, Debug)]
pub struct CriteriaOptions {
    pub hull: HullOptions,
    /// Bisection tolerance on `b`.
    pub tol: f64,
    pub precondition_tol: f64,
    pub boundary_tol: f64,
    /// Rate at which to report the verdict; `b_min` when absent.
    pub b_query: Option<f64>,
    /// Run despite violated preconditions, downgrading to `sufficient`.
    pub force: bool,
    pub search: SearchOptions,
}

impl Default for CriteriaOptions {
    fn default() -> Self {
        Self {
            hull: HullOptions::default(),
            tol: 1e-7,
            precondition_tol: NORMALIZATION_TOL,
            boundary_tol: 1e-6,
            b_query: None,
            force: false,
            search: SearchOptions::default(),
        }
    }
}

pub(crate) fn classify(margin: f64, tol: f64) -> Achievable {
    if margin.abs() <= tol {
        Achievable::Boundary
    } else if margin > 0.0 {
        Achievable::Yes
    } else {
        Achievable::No
    }
}

/// Side-information variable list: `[name]` if present, else empty.
pub(crate) fn side<'a>(joint: &JointPmf, name: &'a str) -> Vec<&'a str> {
    if joint.has(name) { vec![name] } else { Vec::new() }
}

pub(crate) fn require_sources(joint: &JointPmf) -> Result<()> {
    for n in ["S1", "S2"] {
        if !joint.has(n) {
            return Err(Error::UnknownVariable(n.into()));
        }
    }
    Ok(())
}

/// Applies the configured tolerance and either rejects violated
/// preconditions or downgrades the mode when forced.
pub(crate) fn enforce(
    mut reports: Vec<StructureResult>,
    mode: Mode,
    opts: &CriteriaOptions,
    notes: &mut Vec<String>,
) -> Result<(Mode, Vec<StructureResult>)> {
    for r in &mut reports {
        r.holds = r.max_deviation <= opts.precondition_tol;
    }
    if reports.iter().all(|r| r.holds) {
        return Ok((mode, reports));
    }
    if !opts.force {
        return Err(Error::Precondition(reports));
    }
    notes.push("preconditions violated; forced run reports sufficiency only".into());
    Ok((Mode::Sufficient, reports))
}

/// Probability that two variables differ.
pub(crate) fn equality_check(joint: &JointPmf, a: &str, b: &str) -> Result<StructureResult> {
    let (ia, ib) = (joint.index_of(a)?, joint.index_of(b)?);
    let t = joint.marginal_table(&[ia, ib]);
    let nb = joint.cards()[ib];
    let dev: f64 = t.iter().enumerate().filter(|(k, _)| k / nb != k % nb).map(|(_, v)| v).sum();
    Ok(StructureResult::new(format!("{a}={b}"), dev, NORMALIZATION_TOL))
}

/// Builds a verdict from a region and an entropy requirement.
pub(crate) fn scaled_verdict(
    theorem: &str,
    mode: Mode,
    hull: &RegionHull,
    h: &EntropyVector,
    opts: &CriteriaOptions,
    preconditions: Vec<StructureResult>,
    mut notes: Vec<String>,
) -> Result<Verdict> {
    let sol = match min_scale_b(hull, h, opts.tol) {
        Ok(s) => Some(s),
        Err(Error::Unachievable(msg)) => {
            notes.push(format!("unachievable at any b: {msg}"));
            None
        }
        Err(e) => return Err(e),
    };
    let b_min = sol.as_ref().map(|s| s.b_min);
    let (margin, witness, rates) = match (opts.b_query, &sol) {
        (None, Some(s)) => {
            let m = margin_at(hull, h, s.b_min)?;
            if !s.q_bound_met {
                notes.push("witness needs more than 4 time-sharing points".into());
            }
            (m.margin, Some(s.witness.clone()), Some(s.witness_rates.clone()))
        }
        (Some(b), _) => {
            let m = margin_at(hull, h, b)?;
            (m.margin, Some(m.witness), Some(m.witness_rates))
        }
        (None, None) => {
            let m = margin_at(hull, h, 1.0)?;
            (m.margin, None, None)
        }
    };
    let achievable = if sol.is_none() { Achievable::No } else { classify(margin, opts.boundary_tol) };
    if let Some(b) = b_min {
        notes.push(format!("achievable for every b > {b:.6}"));
    }
    Ok(Verdict {
        theorem: theorem.into(),
        mode,
        b_query: opts.b_query,
        achievable,
        b_min,
        margin,
        boundary_tol: opts.boundary_tol,
        entropy_vector: h.0.clone(),
        witness_rates: rates,
        witness: witness.map(|input| Witness::Product { input }),
        preconditions,
        interference: None,
        notes,
    })
}

/// Parses theorem names used on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    Mac(MacTheorem),
    Cmac(CmacTheorem),
    Ic(IcTheorem),
    Baseline(Baseline),
    Sufficient(Scenario),
    StrongInterference,
    TwowayAchievable,
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "thm1" => Theorem::Sufficient(Scenario::MacThm1),
            "thm2" => Theorem::Mac(MacTheorem::Thm2),
            "thm3" => Theorem::Mac(MacTheorem::Thm3),
            "thm4" => Theorem::Sufficient(Scenario::CmacThm4),
            "thm5" => Theorem::Cmac(CmacTheorem::Thm5),
            "thm6" => Theorem::Cmac(CmacTheorem::Thm6),
            "thm7" => Theorem::Cmac(CmacTheorem::Thm7),
            "thm8" => Theorem::Cmac(CmacTheorem::Thm8),
            "thm9" => Theorem::Ic(IcTheorem::Thm9),
            "thm10" => Theorem::Ic(IcTheorem::Thm10),
            "infosep" => Theorem::Baseline(Baseline::InfoSep),
            "fullcoop" => Theorem::Baseline(Baseline::FullCoop),
            "stronginterference" => Theorem::StrongInterference,
            "twoway-ach" => Theorem::TwowayAchievable,
            other => return Err(Error::InvalidArgument(format!("unknown theorem `{other}`"))),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification() {
        assert_eq!(classify(1e-7, 1e-6), Achievable::Boundary);
        assert_eq!(classify(0.1, 1e-6), Achievable::Yes);
        assert_eq!(classify(-0.1, 1e-6), Achievable::No);
    }

    #[test]
    fn theorem_names() {
        assert_eq!("thm10".parse::<Theorem>().unwrap(), Theorem::Ic(IcTheorem::Thm10));
        assert!("thm11".parse::<Theorem>().is_err());
    }

    #[test]
    fn verdict_json_shape() {
        let v = Verdict {
            theorem: "thm3".into(),
            mode: Mode::Exact,
            b_query: None,
            achievable: Achievable::NoWitness,
            b_min: Some(0.5),
            margin: 0.0,
            boundary_tol: 1e-6,
            entropy_vector: vec![1.0, 1.0, 2.0],
            witness_rates: None,
            witness: Some(Witness::Joint { pxx: vec![1.0] }),
            preconditions: vec![],
            interference: None,
            notes: vec![],
        };
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["mode"], "exact");
        assert_eq!(j["achievable"], "no-witness");
        assert_eq!(j["witness"]["kind"], "joint");
    }
}
