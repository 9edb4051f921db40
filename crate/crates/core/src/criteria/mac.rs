use super::{enforce, require_sources, scaled_verdict, side, Achievable, CriteriaOptions, Mode, Verdict, Witness};
use crate::prob::{structure_check, ChannelKind, ChannelModel, JointPmf, Pattern};
use crate::regions::{achievable_hull, refine_toward, full_coop_minrate, sw_region_corner, EntropyVector};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MacTheorem {
    /// Markov `S1 - W1 - S2`.
    Thm2,
    /// Independent sources.
    Thm3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Baseline {
    /// Separate Slepian–Wolf and MAC codes.
    InfoSep,
    /// Fully cooperating transmitters.
    FullCoop,
}

pub(crate) fn require_kind(channel: &ChannelModel, kinds: &[ChannelKind], operation: &str) -> Result<()> {
    if !kinds.contains(&channel.kind()) {
        return Err(Error::UnsupportedChannel { kind: channel.kind().to_string(), operation: operation.into() });
    }
    Ok(())
}

/// Exact minimum rate over a MAC with receiver side information `W1`
/// (absent `W1` means no side information).
pub fn minrate_mac(joint: &JointPmf, channel: &ChannelModel, theorem: MacTheorem, opts: &CriteriaOptions) -> Result<Verdict> {
    require_kind(channel, &[ChannelKind::Mac], "MAC minimum rate")?;
    require_sources(joint)?;
    let w = side(joint, "W1");
    let mut notes = Vec::new();
    let (name, pattern, h) = match theorem {
        MacTheorem::Thm2 => {
            let h1 = joint.entropy_cond(&["S1"], &w)?;
            let h2 = joint.entropy_cond(&["S2"], &w)?;
            ("thm2", Pattern::markov(&["S1"], &w, &["S2"]), EntropyVector::triple(h1, h2, h1 + h2))
        }
        MacTheorem::Thm3 => (
            "thm3",
            Pattern::independent(&["S1"], &["S2"]),
            sw_region_corner(joint, ("S1", "S2"), &w)?,
        ),
    };
    let report = vec![structure_check(joint, &pattern)?];
    let (mode, report) = enforce(report, Mode::Exact, opts, &mut notes)?;
    let mut hull = achievable_hull(channel, 1, &opts.hull)?;
    refine_toward(&mut hull, channel, &h, &opts.hull)?;
    scaled_verdict(name, mode, &hull, &h, opts, report, notes)
}

/// Reference rates: separation (an achievable upper bound on the minimum)
/// and full cooperation (a lower bound).
pub fn minrate_baseline(joint: &JointPmf, channel: &ChannelModel, baseline: Baseline, opts: &CriteriaOptions) -> Result<Verdict> {
    require_kind(channel, &[ChannelKind::Mac], "MAC baselines")?;
    require_sources(joint)?;
    let w = side(joint, "W1");
    match baseline {
        Baseline::InfoSep => {
            let h = sw_region_corner(joint, ("S1", "S2"), &w)?;
            let mut hull = achievable_hull(channel, 1, &opts.hull)?;
            refine_toward(&mut hull, channel, &h, &opts.hull)?;
            let notes = vec!["separate source and channel codes".into()];
            scaled_verdict("infosep", Mode::Sufficient, &hull, &h, opts, Vec::new(), notes)
        }
        Baseline::FullCoop => {
            let mut notes = vec!["outer bound: transmitters see both sources".to_string()];
            let (b_min, margin, achievable, pxx, entropy) = match full_coop_minrate(joint, channel, &w) {
                Ok(s) => {
                    let b = opts.b_query.unwrap_or(s.b_min);
                    let margin = b * s.capacity - s.entropy;
                    // below b_min no code exists; above it this bound is silent
                    let achievable = match super::classify(margin, opts.boundary_tol) {
                        Achievable::Yes => Achievable::NoWitness,
                        other => other,
                    };
                    (Some(s.b_min), margin, achievable, Some(s.input), s.entropy)
                }
                Err(Error::Unachievable(msg)) => {
                    notes.push(format!("unachievable at any b: {msg}"));
                    let e = joint.entropy_cond(&["S1", "S2"], &w)?;
                    (None, -e, Achievable::No, None, e)
                }
                Err(e) => return Err(e),
            };
            Ok(Verdict {
                theorem: "fullcoop".into(),
                mode: Mode::Necessary,
                b_query: opts.b_query,
                achievable,
                b_min,
                margin,
                boundary_tol: opts.boundary_tol,
                entropy_vector: vec![entropy],
                witness_rates: None,
                witness: pxx.map(|pxx| Witness::Joint { pxx }),
                preconditions: Vec::new(),
                interference: None,
                notes,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::regions::margin_at;

    fn margin_curve(joint: &JointPmf, channel: &ChannelModel, bs: &[f64], opts: &CriteriaOptions) -> Result<Vec<f64>> {
        let w = side(joint, "W1");
        let h = sw_region_corner(joint, ("S1", "S2"), &w)?;
        let hull = achievable_hull(channel, 1, &opts.hull)?;
        bs.iter().map(|&b| Ok(margin_at(&hull, &h, b)?.margin)).collect()
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn theorem3_examples() {
        let opts = CriteriaOptions::default();
        let ch = catalog::adder_mac();
        let v = minrate_mac(&catalog::independent_xor(), &ch, MacTheorem::Thm3, &opts).unwrap();
        close(v.b_min.unwrap(), 2.0 / 3.0, 0.01);
        assert_eq!(v.mode, Mode::Exact);
        assert_eq!(v.achievable, Achievable::Boundary);
        let v = minrate_mac(&catalog::independent_bits(), &ch, MacTheorem::Thm3, &opts).unwrap();
        close(v.b_min.unwrap(), 4.0 / 3.0, 0.01);
    }

    #[test]
    fn theorem2_cover_salehi() {
        let opts = CriteriaOptions::default();
        let v = minrate_mac(&catalog::cover_salehi_w1(), &catalog::adder_mac(), MacTheorem::Thm2, &opts).unwrap();
        // the sum constraint binds: 2 H(S1|W1) / 1.5
        let h = catalog::cover_salehi_w1().entropy_cond(&["S1"], &["W1"]).unwrap();
        close(v.b_min.unwrap(), 2.0 * h / 1.5, 1e-4);
    }

    #[test]
    fn precondition_is_enforced() {
        let opts = CriteriaOptions::default();
        let err = minrate_mac(&catalog::cover_salehi(), &catalog::adder_mac(), MacTheorem::Thm3, &opts).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        let forced = CriteriaOptions { force: true, ..CriteriaOptions::default() };
        let v = minrate_mac(&catalog::cover_salehi(), &catalog::adder_mac(), MacTheorem::Thm3, &forced).unwrap();
        assert_eq!(v.mode, Mode::Sufficient);
    }

    #[test]
    fn query_above_and_below() {
        let ch = catalog::adder_mac();
        let above = CriteriaOptions { b_query: Some(1.0), ..CriteriaOptions::default() };
        let v = minrate_mac(&catalog::independent_xor(), &ch, MacTheorem::Thm3, &above).unwrap();
        assert_eq!(v.achievable, Achievable::Yes);
        let below = CriteriaOptions { b_query: Some(0.5), ..CriteriaOptions::default() };
        let v = minrate_mac(&catalog::independent_xor(), &ch, MacTheorem::Thm3, &below).unwrap();
        assert_eq!(v.achievable, Achievable::No);
    }

    #[test]
    fn margins_grow_with_b() {
        let opts = CriteriaOptions::default();
        let bs: Vec<f64> = (1..20).map(|i| i as f64 * 0.1).collect();
        let m = margin_curve(&catalog::independent_xor(), &catalog::adder_mac(), &bs, &opts).unwrap();
        assert!(m.windows(2).all(|w| w[1] >= w[0] - 1e-9));
    }

    #[test]
    fn baselines() {
        let opts = CriteriaOptions::default();
        let ch = catalog::adder_mac();
        let v = minrate_baseline(&catalog::independent_xor(), &ch, Baseline::FullCoop, &opts).unwrap();
        close(v.b_min.unwrap(), 0.631, 0.01);
        assert_eq!(v.mode, Mode::Necessary);
        let v = minrate_baseline(&catalog::cover_salehi(), &ch, Baseline::InfoSep, &opts).unwrap();
        close(v.b_min.unwrap(), 1.057, 0.01);
    }
}
