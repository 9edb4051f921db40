use serde::{Deserialize, Serialize};

use super::mac::require_kind;
use super::search::maximize_over_blocks;
use super::SearchOptions;
use crate::prob::{joint_input_rates, ChannelKind, ChannelModel, ConditionedInput, JointPmf, ProductInput, ReceiverLaw};
use crate::{Error, Result};

/// Violations above this many bits count as failures.
pub const INTERFERENCE_TOL: f64 = 1e-6;

/// Result of maximizing the strong-interference violations over inputs.
/// `holds` is certified only up to the recorded search coverage.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InterferenceReport {
    pub b: f64,
    /// Classical form: product inputs, no source terms.
    pub classical: bool,
    pub holds: bool,
    pub worst_violation: f64,
    /// Largest violation found for each of the two inequalities.
    pub violations: [f64; 2],
    /// 1 or 2.
    pub worst_condition: usize,
    pub worst_witness: ConditionedInput,
    pub grid_steps: usize,
    pub evaluated: usize,
    pub restarts: usize,
    pub seed: u64,
}

struct Setup {
    ps: Vec<f64>,
    ns: [usize; 2],
    nx: [usize; 2],
    laws: [ReceiverLaw; 2],
    mi: [f64; 2],
}

impl Setup {
    fn induced(&self, blocks: &[Vec<f64>]) -> Vec<f64> {
        let [ns1, ns2] = self.ns;
        let [nx1, nx2] = self.nx;
        let mut pxx = vec![0.0; nx1 * nx2];
        for s1 in 0..ns1 {
            for s2 in 0..ns2 {
                let w = self.ps[s1 * ns2 + s2];
                if w <= 0.0 {
                    continue;
                }
                let (a, b) = (&blocks[s1], &blocks[ns1 + s2]);
                for x1 in 0..nx1 {
                    for x2 in 0..nx2 {
                        pxx[x1 * nx2 + x2] += w * a[x1] * b[x2];
                    }
                }
            }
        }
        pxx
    }

    /// `[b (I(X1;Y1|X2) - I(X1;Y2|X2)) - I(S1;W2), b (I(X2;Y2|X1) - I(X2;Y1|X1)) - I(S2;W1)]`.
    fn violations(&self, pxx: &[f64], b: f64) -> [f64; 2] {
        let r1 = joint_input_rates(&self.laws[0], pxx);
        let r2 = joint_input_rates(&self.laws[1], pxx);
        [b * (r1[0] - r2[0]) - self.mi[0], b * (r2[1] - r1[1]) - self.mi[1]]
    }
}

/// Maximizes each strong source-channel interference violation over
/// `p(x1|s1) p(x2|s2)` (or over `p(x1) p(x2)` with no source terms in the
/// classical form) by grid search and multi-start coordinate ascent.
pub fn strong_interference_check(
    joint: &JointPmf,
    channel: &ChannelModel,
    b: f64,
    classical: bool,
    search: &SearchOptions,
) -> Result<InterferenceReport> {
    require_kind(channel, &[ChannelKind::Compound, ChannelKind::NoMai, ChannelKind::TwoWay], "strong interference")?;
    if !(b >= 0.0 && b.is_finite()) {
        return Err(Error::InvalidArgument(format!("rate must be nonnegative, got {b}")));
    }
    for v in ["S1", "S2"] {
        if !joint.has(v) {
            return Err(Error::UnknownVariable(v.into()));
        }
    }
    let mi = if classical {
        [0.0, 0.0]
    } else {
        for w in ["W1", "W2"] {
            if !joint.has(w) {
                return Err(Error::InvalidArgument(format!("missing side-information variable {w}")));
            }
        }
        [joint.mutual_info(&["S1"], &["W2"], &[])?, joint.mutual_info(&["S2"], &["W1"], &[])?]
    };
    let ps = if classical { vec![1.0] } else { joint.marginal(&["S1", "S2"])?.table().to_vec() };
    let ns = if classical { [1, 1] } else { [joint.cardinality("S1")?, joint.cardinality("S2")?] };
    let nx = channel.input_cards();
    let setup = Setup { ps, ns, nx, laws: [channel.receiver_law(0)?, channel.receiver_law(1)?], mi };
    let scale = if classical { 1.0 } else { b };

    let mut dims = vec![nx[0]; ns[0]];
    dims.extend(vec![nx[1]; ns[1]]);
    let outcomes: Vec<_> = (0..2)
        .map(|k| maximize_over_blocks(&dims, |x| setup.violations(&setup.induced(x), scale)[k], search))
        .collect();
    let violations = [outcomes[0].value, outcomes[1].value];
    let worst = if violations[0] >= violations[1] { 0 } else { 1 };
    let blocks = &outcomes[worst].point;
    let witness = if classical {
        ConditionedInput::from_product(
            &ProductInput { q_weights: vec![1.0], x1: vec![blocks[0].clone()], x2: vec![blocks[1].clone()] },
            joint.cardinality("S1")?,
            joint.cardinality("S2")?,
        )
    } else {
        ConditionedInput {
            q_weights: vec![1.0],
            x1: vec![blocks[..ns[0]].to_vec()],
            x2: vec![blocks[ns[0]..].to_vec()],
        }
    };
    Ok(InterferenceReport {
        b,
        classical,
        holds: violations[worst] <= INTERFERENCE_TOL,
        worst_violation: violations[worst],
        violations,
        worst_condition: worst + 1,
        worst_witness: witness,
        grid_steps: outcomes[0].steps,
        evaluated: outcomes.iter().map(|o| o.evaluated).sum(),
        restarts: search.restarts,
        seed: search.seed,
    })
}
