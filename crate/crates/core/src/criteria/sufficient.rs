use serde::{Deserialize, Serialize};

use super::mac::require_kind;
use super::search::{ascend_from, maximize_over_blocks};
use super::{classify, require_sources, side, Achievable, CriteriaOptions, Mode, SearchOptions, Verdict, Witness};
use crate::prob::{gacs_korner_common, ChannelKind, ChannelModel, CommonPart, ConditionedInput, JointPmf, ReceiverLaw};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scenario {
    /// MAC with side information `W1`.
    MacThm1,
    /// Compound MAC with side information `W1`, `W2`.
    CmacThm4,
}

/// One strict inequality `lhs < rhs`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    /// 1-based receiver index.
    pub receiver: usize,
    pub lhs: f64,
    pub rhs: f64,
}

impl Condition {
    pub fn slack(&self) -> f64 {
        self.rhs - self.lhs
    }
}

/// Joint pmf over `Q`, the listed source variables, `X1`, `X2`, `Y` for
/// source-conditioned inputs. `sources` must start with `S1`, `S2`.
pub(crate) fn conditioned_system(
    joint: &JointPmf,
    sources: &[&str],
    law: &ReceiverLaw,
    input: &ConditionedInput,
) -> Result<JointPmf> {
    let src = joint.marginal(sources)?;
    let k = sources.len();
    let mut names: Vec<String> = vec!["Q".into()];
    names.extend(sources.iter().map(|s| s.to_string()));
    names.extend(["X1".into(), "X2".into(), "Y".into()]);
    let mut cards = vec![input.q_len()];
    cards.extend_from_slice(src.cards());
    cards.extend([law.nx1, law.nx2, law.ny]);
    let scards = src.cards().to_vec();
    let stable = src.table();
    JointPmf::from_fn(names, cards, |a| {
        let q = a[0];
        let s = &a[1..1 + k];
        let idx = s.iter().zip(&scards).fold(0, |acc, (&v, &c)| acc * c + v);
        let (x1, x2, y) = (a[1 + k], a[2 + k], a[3 + k]);
        input.q_weights[q] * stable[idx] * input.x1[q][s[0]][x1] * input.x2[q][s[1]][x2] * law.prob(x1, x2, y)
    })
}

/// The four conditions per receiver at a given source-conditioned input.
pub fn evaluate_b1_conditions(
    joint: &JointPmf,
    channel: &ChannelModel,
    receivers: &[usize],
    input: &ConditionedInput,
) -> Result<Vec<Condition>> {
    require_sources(joint)?;
    input.validate(usize::MAX)?;
    input.check_dims([joint.cardinality("S1")?, joint.cardinality("S2")?], channel.input_cards())?;
    let common = gacs_korner_common(&joint.marginal(&["S1", "S2"])?)?;
    let mut out = Vec::new();
    for &k in receivers {
        let w = side(joint, if k == 0 { "W1" } else { "W2" });
        let mut vars = vec!["S1", "S2"];
        vars.extend(&w);
        let sys = conditioned_system(joint, &vars, &channel.receiver_law(k)?, input)?;
        out.extend(receiver_conditions(&sys, &w, &common, k + 1)?);
    }
    Ok(out)
}

fn receiver_conditions(sys: &JointPmf, w: &[&str], common: &CommonPart, receiver: usize) -> Result<Vec<Condition>> {
    let map = common.map1.clone();
    let sys = sys.with_function_var("U", common.u_cardinality, |a| map[a[1]])?;
    let with = |extra: &[&'static str]| -> Vec<&str> {
        let mut v: Vec<&str> = extra.to_vec();
        v.extend_from_slice(w);
        v
    };
    let cond = |name: &str, lhs: f64, rhs: f64| Condition { name: name.into(), receiver, lhs, rhs };
    Ok(vec![
        cond(
            "H(S1|S2,W) < I(X1;Y|X2,S2,W,Q)",
            sys.entropy_cond(&["S1"], &with(&["S2"]))?,
            sys.mutual_info(&["X1"], &["Y"], &with(&["X2", "S2", "Q"]))?,
        ),
        cond(
            "H(S2|S1,W) < I(X2;Y|X1,S1,W,Q)",
            sys.entropy_cond(&["S2"], &with(&["S1"]))?,
            sys.mutual_info(&["X2"], &["Y"], &with(&["X1", "S1", "Q"]))?,
        ),
        cond(
            "H(S1,S2|U,W) < I(X1,X2;Y|U,W,Q)",
            sys.entropy_cond(&["S1", "S2"], &with(&["U"]))?,
            sys.mutual_info(&["X1", "X2"], &["Y"], &with(&["U", "Q"]))?,
        ),
        cond(
            "H(S1,S2|W) < I(X1,X2;Y|W)",
            sys.entropy_cond(&["S1", "S2"], &with(&[]))?,
            sys.mutual_info(&["X1", "X2"], &["Y"], &with(&[]))?,
        ),
    ])
}

pub(crate) fn min_slack(conds: &[Condition]) -> f64 {
    conds.iter().map(Condition::slack).fold(f64::INFINITY, f64::min)
}

/// Splits flat blocks `[p(x1|s1=0..), p(x2|s2=0..)]` (optionally preceded by
/// `p(q)` and repeated per `q`) into a conditioned input.
pub(crate) fn blocks_to_input(blocks: &[Vec<f64>], q: usize, ns: [usize; 2]) -> ConditionedInput {
    let (weights, rest) = if q == 1 { (vec![1.0], blocks) } else { (blocks[0].clone(), &blocks[1..]) };
    let per = ns[0] + ns[1];
    ConditionedInput {
        q_weights: weights,
        x1: (0..q).map(|i| rest[i * per..i * per + ns[0]].to_vec()).collect(),
        x2: (0..q).map(|i| rest[i * per + ns[0]..(i + 1) * per].to_vec()).collect(),
    }
}

/// Maximizes the smallest slack of `eval` over source-conditioned inputs,
/// first without time sharing, then with `q_max` time-sharing values.
pub(crate) fn search_conditioned<F>(
    ns: [usize; 2],
    nx: [usize; 2],
    q_max: usize,
    eval: F,
    opts: &SearchOptions,
    good_enough: f64,
) -> (ConditionedInput, f64, usize)
where
    F: Fn(&ConditionedInput) -> f64 + Sync,
{
    let mut dims = vec![nx[0]; ns[0]];
    dims.extend(vec![nx[1]; ns[1]]);
    let out = maximize_over_blocks(&dims, |x| eval(&blocks_to_input(x, 1, ns)), opts);
    let mut best = (blocks_to_input(&out.point, 1, ns), out.value);
    if out.value > good_enough || q_max <= 1 {
        return (best.0, best.1, out.evaluated);
    }
    let mut qdims = vec![q_max];
    for _ in 0..q_max {
        qdims.extend(&dims);
    }
    let mut start = vec![vec![1.0 / q_max as f64; q_max]];
    for _ in 0..q_max {
        start.extend(out.point.iter().cloned());
    }
    let (point, value) = ascend_from(&qdims, vec![start], |x| eval(&blocks_to_input(x, q_max, ns)), opts, 0.1);
    if value > best.1 {
        best = (blocks_to_input(&point, q_max, ns), value);
    }
    (best.0, best.1, out.evaluated)
}

/// Searches for a source-conditioned witness of the rate-one sufficient
/// conditions. Failing to find one proves nothing.
pub fn check_sufficient_b1(joint: &JointPmf, channel: &ChannelModel, scenario: Scenario, opts: &CriteriaOptions) -> Result<Verdict> {
    let (name, receivers) = match scenario {
        Scenario::MacThm1 => {
            require_kind(channel, &[ChannelKind::Mac], "the MAC rate-one check")?;
            ("thm1", vec![0])
        }
        Scenario::CmacThm4 => {
            require_kind(channel, &[ChannelKind::Compound, ChannelKind::NoMai], "the compound MAC rate-one check")?;
            ("thm4", vec![0, 1])
        }
    };
    require_sources(joint)?;
    let common = gacs_korner_common(&joint.marginal(&["S1", "S2"])?)?;
    let ns = [joint.cardinality("S1")?, joint.cardinality("S2")?];
    let nx = channel.input_cards();
    let ny = receivers.iter().map(|&k| channel.receiver_alphabet(k)).max().unwrap_or(1);
    let q_max = (nx[0] * nx[1]).min(ny).min(crate::prob::DEFAULT_MAX_Q);
    let search = SearchOptions { max_grid: opts.search.max_grid.min(20_000), ..opts.search.clone() };
    let eval = |input: &ConditionedInput| -> f64 {
        evaluate_b1_conditions(joint, channel, &receivers, input).map(|c| min_slack(&c)).unwrap_or(f64::NEG_INFINITY)
    };
    let (input, _, evaluated) = search_conditioned(ns, nx, q_max, eval, &search, opts.boundary_tol);
    let conds = evaluate_b1_conditions(joint, channel, &receivers, &input)?;
    let margin = min_slack(&conds);
    let achievable = match classify(margin, opts.boundary_tol) {
        Achievable::No => Achievable::NoWitness,
        a => a,
    };
    let mut notes = vec![format!(
        "common part has {} value(s), H(U) = {:.6}",
        common.u_cardinality, common.u_entropy
    )];
    notes.push(format!("searched {evaluated} grid inputs plus local ascent, |Q| up to {q_max}"));
    for c in &conds {
        notes.push(format!("rx{} {}: {:.6} < {:.6}", c.receiver, c.name, c.lhs, c.rhs));
    }
    Ok(Verdict {
        theorem: name.into(),
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
