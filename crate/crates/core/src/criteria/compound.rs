use super::mac::require_kind;
use super::{
    enforce, equality_check, require_sources, scaled_verdict, side, strong_interference_check, CriteriaOptions, Mode,
    Verdict,
};
use crate::prob::{no_mai_check, structure_check, ChannelKind, ChannelModel, JointPmf, Pattern, StructureResult};
use crate::regions::{achievable_hull, refine_toward, sw_region_corner, EntropyVector};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmacTheorem {
    /// General compound MAC; sufficient only.
    Thm5,
    /// `S1` independent of `(S2, W1)` and `S2` independent of `(S1, W2)`.
    Thm6,
    /// No multiple-access interference.
    Thm7,
    /// Common side information `W1 = W2 = W` with `S1 - W - S2`.
    Thm8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IcTheorem {
    /// Independence structure plus strong source-channel interference.
    Thm9,
    /// Common side information plus classical strong interference.
    Thm10,
}

const TWO_RECEIVERS: [ChannelKind; 3] = [ChannelKind::Compound, ChannelKind::NoMai, ChannelKind::TwoWay];

fn per_receiver_corners(joint: &JointPmf) -> Result<EntropyVector> {
    Ok(EntropyVector::concat(&[
        sw_region_corner(joint, ("S1", "S2"), &side(joint, "W1"))?,
        sw_region_corner(joint, ("S1", "S2"), &side(joint, "W2"))?,
    ]))
}

fn independence_reports(joint: &JointPmf) -> Result<Vec<StructureResult>> {
    let mut b1 = vec!["S2"];
    b1.extend(side(joint, "W1"));
    let mut b2 = vec!["S1"];
    b2.extend(side(joint, "W2"));
    Ok(vec![
        structure_check(joint, &Pattern::independent(&["S1"], &b1))?,
        structure_check(joint, &Pattern::independent(&["S2"], &b2))?,
    ])
}

/// The common side-information variable (`W1`, which must equal `W2` when
/// both are present) and its reports.
fn common_side(joint: &JointPmf) -> Result<(Vec<&'static str>, Vec<StructureResult>)> {
    let w = side(joint, "W1");
    let mut reports = Vec::new();
    if joint.has("W1") && joint.has("W2") {
        reports.push(equality_check(joint, "W1", "W2")?);
    }
    reports.push(structure_check(joint, &Pattern::markov(&["S1"], &w, &["S2"]))?);
    Ok((w, reports))
}

fn common_vector(joint: &JointPmf, w: &[&str]) -> Result<EntropyVector> {
    let h1 = joint.entropy_cond(&["S1"], w)?;
    let h2 = joint.entropy_cond(&["S2"], w)?;
    let t = EntropyVector::triple(h1, h2, h1 + h2);
    Ok(EntropyVector::concat(&[t.clone(), t]))
}

/// Minimum rate over a two-receiver compound MAC. Both receivers share one
/// input distribution, so the region is six-dimensional.
pub fn minrate_cmac(joint: &JointPmf, channel: &ChannelModel, theorem: CmacTheorem, opts: &CriteriaOptions) -> Result<Verdict> {
    require_kind(channel, &TWO_RECEIVERS, "compound MAC minimum rate")?;
    require_sources(joint)?;
    let mut notes = Vec::new();
    let (name, mode, reports, h) = match theorem {
        CmacTheorem::Thm5 => ("thm5", Mode::Sufficient, Vec::new(), per_receiver_corners(joint)?),
        CmacTheorem::Thm6 => {
            let h = |k: &str, m: &str, w: &str| -> Result<(f64, f64)> {
                Ok((joint.entropy(&[k])?, joint.entropy_cond(&[m], &side(joint, w))?))
            };
            let (a1, b1) = h("S1", "S2", "W1")?;
            let (a2, b2) = h("S2", "S1", "W2")?;
            let h = EntropyVector(vec![a1, b1, a1 + b1, b2, a2, a2 + b2]);
            ("thm6", Mode::Exact, independence_reports(joint)?, h)
        }
        CmacTheorem::Thm7 => ("thm7", Mode::Exact, vec![no_mai_check(channel)], per_receiver_corners(joint)?),
        CmacTheorem::Thm8 => {
            let (w, reports) = common_side(joint)?;
            ("thm8", Mode::Exact, reports, common_vector(joint, &w)?)
        }
    };
    let (mode, reports) = enforce(reports, mode, opts, &mut notes)?;
    let mut hull = achievable_hull(channel, 2, &opts.hull)?;
    refine_toward(&mut hull, channel, &h, &opts.hull)?;
    scaled_verdict(name, mode, &hull, &h, opts, reports, notes)
}

/// Interference channel: each receiver decodes both sources, and the
/// strong-interference certificate at the evaluated rate upgrades the
/// answer from sufficient to exact.
pub fn minrate_ic(joint: &JointPmf, channel: &ChannelModel, theorem: IcTheorem, opts: &CriteriaOptions) -> Result<Verdict> {
    require_kind(channel, &TWO_RECEIVERS, "interference channel minimum rate")?;
    require_sources(joint)?;
    let mut notes = Vec::new();
    let (name, reports, h) = match theorem {
        IcTheorem::Thm9 => ("thm9", independence_reports(joint)?, per_receiver_corners(joint)?),
        IcTheorem::Thm10 => {
            let (w, reports) = common_side(joint)?;
            ("thm10", reports, common_vector(joint, &w)?)
        }
    };
    let (mode, reports) = enforce(reports, Mode::Exact, opts, &mut notes)?;
    let mut hull = achievable_hull(channel, 2, &opts.hull)?;
    refine_toward(&mut hull, channel, &h, &opts.hull)?;
    let mut verdict = scaled_verdict(name, mode, &hull, &h, opts, reports, notes)?;
    let b = verdict.b_evaluated().unwrap_or(1.0);
    let report = strong_interference_check(joint, channel, b, theorem == IcTheorem::Thm10, &opts.search)?;
    if !report.holds && verdict.mode == Mode::Exact {
        verdict.mode = Mode::Sufficient;
        verdict.notes.push(format!(
            "strong interference fails at b = {b:.6} (violation {:.6}); only sufficiency is claimed",
            report.worst_violation
        ));
    }
    verdict.interference = Some(report);
    Ok(verdict)
}
