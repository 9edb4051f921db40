use serde::{Deserialize, Serialize};

use super::mac::require_kind;
use super::search::maximize_over_blocks;
use super::sufficient::{conditioned_system, min_slack, search_conditioned, Condition};
use super::{classify, require_sources, Achievable, CriteriaOptions, Mode, SearchOptions, Verdict, Witness};
use crate::prob::{joint_input_rates, ChannelKind, ChannelModel, ConditionedInput, JointPmf};
use crate::{Error, Result};

/// Lower bound on every achievable rate of a two-way channel.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OuterBound {
    pub b_lower: f64,
    /// Minimizing joint input, row-major over `(x1, x2)`.
    pub pxx: Vec<f64>,
    /// `[H(S1|S2) / I(X1;Y2|X2), H(S2|S1) / I(X2;Y1|X1)]` at `pxx`.
    pub ratios: [f64; 2],
    /// `[I(X1;Y2|X2), I(X2;Y1|X1)]` at `pxx`.
    pub rates: [f64; 2],
    pub entropies: [f64; 2],
    pub grid_steps: usize,
    pub evaluated: usize,
}

fn ratio(h: f64, i: f64) -> f64 {
    if h <= 1e-12 {
        0.0
    } else if i <= 1e-15 {
        f64::INFINITY
    } else {
        h / i
    }
}

/// `min over joint p(x1,x2)` of the larger of the two rate ratios.
pub fn twoway_outer(joint: &JointPmf, channel: &ChannelModel, search: &SearchOptions) -> Result<OuterBound> {
    require_kind(channel, &[ChannelKind::TwoWay], "the two-way outer bound")?;
    require_sources(joint)?;
    let h = [joint.entropy_cond(&["S1"], &["S2"])?, joint.entropy_cond(&["S2"], &["S1"])?];
    let (to2, to1) = (channel.receiver_law(1)?, channel.receiver_law(0)?);
    let [nx1, nx2] = channel.input_cards();
    let rates = |pxx: &[f64]| [joint_input_rates(&to2, pxx)[0], joint_input_rates(&to1, pxx)[1]];
    if h.iter().all(|&v| v <= 1e-12) {
        let pxx = vec![1.0 / (nx1 * nx2) as f64; nx1 * nx2];
        let r = rates(&pxx);
        return Ok(OuterBound { b_lower: 0.0, pxx, ratios: [0.0, 0.0], rates: r, entropies: h, grid_steps: 0, evaluated: 0 });
    }
    let objective = |x: &[Vec<f64>]| {
        let r = rates(&x[0]);
        -ratio(h[0], r[0]).max(ratio(h[1], r[1]))
    };
    let out = maximize_over_blocks(&[nx1 * nx2], objective, search);
    if !out.value.is_finite() {
        return Err(Error::Unachievable("a source needs a link that carries no information".into()));
    }
    let pxx = out.point[0].clone();
    let r = rates(&pxx);
    Ok(OuterBound {
        b_lower: -out.value,
        ratios: [ratio(h[0], r[0]), ratio(h[1], r[1])],
        rates: r,
        entropies: h,
        pxx,
        grid_steps: out.steps,
        evaluated: out.evaluated,
    })
}

/// Outer bound packaged as a necessary-mode verdict.
pub fn twoway_outer_verdict(joint: &JointPmf, channel: &ChannelModel, opts: &CriteriaOptions) -> Result<Verdict> {
    let ob = twoway_outer(joint, channel, &opts.search)?;
    let b = opts.b_query.unwrap_or(ob.b_lower);
    let margin = (b * ob.rates[0] - ob.entropies[0]).min(b * ob.rates[1] - ob.entropies[1]);
    let achievable = match opts.b_query {
        Some(q) if q < ob.b_lower - opts.boundary_tol => Achievable::No,
        Some(q) if q > ob.b_lower + opts.boundary_tol => Achievable::NoWitness,
        _ => Achievable::Boundary,
    };
    Ok(Verdict {
        theorem: "twoway-outer".into(),
        mode: Mode::Necessary,
        b_query: opts.b_query,
        achievable,
        b_min: Some(ob.b_lower),
        margin,
        boundary_tol: opts.boundary_tol,
        entropy_vector: ob.entropies.to_vec(),
        witness_rates: Some(ob.rates.to_vec()),
        witness: Some(Witness::Joint { pxx: ob.pxx.clone() }),
        preconditions: Vec::new(),
        interference: None,
        notes: vec![format!("no rate below {:.6} is achievable", ob.b_lower)],
    })
}

/// `H(S1|S2) < I(X1;Y2|X2,S2,Q)` and `H(S2|S1) < I(X2;Y1|X1,S1,Q)`.
pub fn twoway_conditions(joint: &JointPmf, channel: &ChannelModel, input: &ConditionedInput) -> Result<Vec<Condition>> {
    require_kind(channel, &[ChannelKind::TwoWay], "two-way achievability")?;
    require_sources(joint)?;
    input.validate(usize::MAX)?;
    input.check_dims([joint.cardinality("S1")?, joint.cardinality("S2")?], channel.input_cards())?;
    let at2 = conditioned_system(joint, &["S1", "S2"], &channel.receiver_law(1)?, input)?;
    let at1 = conditioned_system(joint, &["S1", "S2"], &channel.receiver_law(0)?, input)?;
    Ok(vec![
        Condition {
            name: "H(S1|S2) < I(X1;Y2|X2,S2,Q)".into(),
            receiver: 2,
            lhs: joint.entropy_cond(&["S1"], &["S2"])?,
            rhs: at2.mutual_info(&["X1"], &["Y"], &["X2", "S2", "Q"])?,
        },
        Condition {
            name: "H(S2|S1) < I(X2;Y1|X1,S1,Q)".into(),
            receiver: 1,
            lhs: joint.entropy_cond(&["S2"], &["S1"])?,
            rhs: at1.mutual_info(&["X2"], &["Y"], &["X1", "S1", "Q"])?,
        },
    ])
}

/// Rate-one inner bound for restricted encoders, evaluated at `input` or,
/// when none is given, at the best input found by search.
pub fn twoway_achievable(
    joint: &JointPmf,
    channel: &ChannelModel,
    input: Option<&ConditionedInput>,
    opts: &CriteriaOptions,
) -> Result<Verdict> {
    require_kind(channel, &[ChannelKind::TwoWay], "two-way achievability")?;
    require_sources(joint)?;
    let (input, searched) = match input {
        Some(i) => (i.clone(), false),
        None => {
            let ns = [joint.cardinality("S1")?, joint.cardinality("S2")?];
            let nx = channel.input_cards();
            let q_max = (nx[0] * nx[1]).min(crate::prob::DEFAULT_MAX_Q);
            let search = SearchOptions { max_grid: opts.search.max_grid.min(20_000), ..opts.search.clone() };
            let eval = |i: &ConditionedInput| {
                twoway_conditions(joint, channel, i).map(|c| min_slack(&c)).unwrap_or(f64::NEG_INFINITY)
            };
            (search_conditioned(ns, nx, q_max, eval, &search, opts.boundary_tol).0, true)
        }
    };
    let conds = twoway_conditions(joint, channel, &input)?;
    let margin = min_slack(&conds);
    let achievable = match (classify(margin, opts.boundary_tol), searched) {
        (Achievable::No, true) => Achievable::NoWitness,
        (a, _) => a,
    };
    let mut notes: Vec<String> = conds
        .iter()
        .map(|c| format!("{}: {:.6} < {:.6}", c.name, c.lhs, c.rhs))
        .collect();
    if achievable == Achievable::Boundary {
        notes.push("conditions met with equality; every rate above 1 is achievable".into());
    }
    Ok(Verdict {
        theorem: "twoway-ach".into(),
        mode: Mode::Sufficient,
        b_query: Some(1.0),
        achievable,
        b_min: None,
        margin,
        boundary_tol: opts.boundary_tol,
        entropy_vector: conds.iter().map(|c| c.lhs).collect(),
        witness_rates: Some(conds.iter().map(|c| c.rhs).collect()),
        witness: Some(Witness::Conditioned { input }),
        preconditions: Vec::new(),
        interference: None,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn multiplier_outer_bound_is_one() {
        let ob = twoway_outer(&catalog::shannon_source(), &catalog::multiplier_two_way(), &SearchOptions::default()).unwrap();
        assert!((ob.b_lower - 1.0).abs() < 0.01, "{}", ob.b_lower);
    }

    #[test]
    fn crossed_pipes_and_constants() {
        let s = SearchOptions::default();
        let ob = twoway_outer(&catalog::independent_bits(), &catalog::crossed_pipes(), &s).unwrap();
        assert!((ob.b_lower - 1.0).abs() < 1e-6);
        let ob = twoway_outer(&catalog::constant_source(), &catalog::multiplier_two_way(), &s).unwrap();
        assert_eq!(ob.b_lower, 0.0);
    }

    #[test]
    fn uncoded_multiplier() {
        let opts = CriteriaOptions::default();
        let uncoded = ConditionedInput::uncoded(&[0, 1], 2, &[0, 1], 2).unwrap();
        let v = twoway_achievable(&catalog::shannon_source(), &catalog::multiplier_two_way(), Some(&uncoded), &opts).unwrap();
        assert!(v.margin.abs() <= 1e-6, "{}", v.margin);
        assert_eq!(v.achievable, Achievable::Boundary);
        let v = twoway_achievable(&catalog::independent_bits(), &catalog::multiplier_two_way(), Some(&uncoded), &opts).unwrap();
        assert_eq!(v.achievable, Achievable::No);
        let v = twoway_achievable(&catalog::constant_source(), &catalog::multiplier_two_way(), None, &opts).unwrap();
        assert_eq!(v.achievable, Achievable::Yes);
    }
}
