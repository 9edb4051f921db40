use serde::{Deserialize, Serialize};

use super::{achievable_hull, min_scale_b, EntropyVector, HullOptions, ScaleSolution};
use crate::capacity::cooperative_capacity;
use crate::prob::{ChannelKind, ChannelModel, JointPmf};
use crate::{Error, Result};

/// Slepian–Wolf corner `(H(S1|S2,side), H(S2|S1,side), H(S1,S2|side))`.
pub fn sw_region_corner(joint: &JointPmf, sources: (&str, &str), side: &[&str]) -> Result<EntropyVector> {
    let (a, b) = sources;
    let mut given_b = vec![b];
    given_b.extend_from_slice(side);
    let mut given_a = vec![a];
    given_a.extend_from_slice(side);
    Ok(EntropyVector::triple(
        joint.entropy_cond(&[a], &given_b)?,
        joint.entropy_cond(&[b], &given_a)?,
        joint.entropy_cond(&[a, b], side)?,
    ))
}

fn require_mac(channel: &ChannelModel, operation: &str) -> Result<()> {
    if channel.kind() != ChannelKind::Mac {
        return Err(Error::UnsupportedChannel { kind: channel.kind().to_string(), operation: operation.into() });
    }
    Ok(())
}

/// Minimum `b` for separate source and channel coding: the Slepian–Wolf
/// region must meet `b` times the MAC region.
pub fn informational_separation_minrate(
    joint: &JointPmf,
    channel: &ChannelModel,
    side: &[&str],
    opts: &HullOptions,
    tol: f64,
) -> Result<ScaleSolution> {
    require_mac(channel, "informational separation")?;
    let h = sw_region_corner(joint, ("S1", "S2"), side)?;
    let hull = achievable_hull(channel, 1, opts)?;
    min_scale_b(&hull, &h, tol)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoopSolution {
    pub b_min: f64,
    /// `H(S1,S2|side)`.
    pub entropy: f64,
    /// `max over p(x1,x2)` of `I(X1,X2;Y)`.
    pub capacity: f64,
    /// Maximizing joint input, row-major over `(x1, x2)`.
    pub input: Vec<f64>,
}

/// `H(S1,S2|side) / max over joint inputs of I(X1,X2;Y)`.
pub fn full_coop_minrate(joint: &JointPmf, channel: &ChannelModel, side: &[&str]) -> Result<CoopSolution> {
    require_mac(channel, "full cooperation")?;
    let entropy = joint.entropy_cond(&["S1", "S2"], side)?;
    let cap = cooperative_capacity(channel, 0)?;
    let b_min = if entropy <= 1e-12 {
        0.0
    } else if cap.capacity <= 1e-12 {
        return Err(Error::Unachievable(format!(
            "H(S1,S2|side) = {entropy:.6} over a channel of zero capacity"
        )));
    } else {
        entropy / cap.capacity
    };
    Ok(CoopSolution { b_min, entropy, capacity: cap.capacity, input: cap.input })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::regions::DEFAULT_BISECTION_TOL;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn corners() {
        let c = sw_region_corner(&catalog::cover_salehi(), ("S1", "S2"), &[]).unwrap();
        close(c.0[0], 2.0 / 3.0, 1e-3);
        close(c.0[1], 2.0 / 3.0, 1e-3);
        close(c.0[2], 1.585, 1e-3);
        let c = sw_region_corner(&catalog::cover_salehi_w1(), ("S1", "S2"), &["W1"]).unwrap();
        close(c.0[0], 0.459, 1e-3);
        close(c.0[2], 0.918, 1e-3);
        let c = sw_region_corner(&catalog::independent_bits(), ("S1", "S2"), &[]).unwrap();
        assert_eq!(c, EntropyVector::triple(1.0, 1.0, 2.0));
        assert!(matches!(
            sw_region_corner(&catalog::cover_salehi_w1(), ("S1", "S2"), &["S1"]),
            Err(Error::OverlappingSets(_))
        ));
    }

    #[test]
    fn separation_baselines() {
        let opts = HullOptions::default();
        let ch = catalog::adder_mac();
        let s = informational_separation_minrate(&catalog::cover_salehi(), &ch, &[], &opts, DEFAULT_BISECTION_TOL).unwrap();
        close(s.b_min, 1.057, 0.01);
        let s = informational_separation_minrate(&catalog::independent_xor(), &ch, &["W1"], &opts, DEFAULT_BISECTION_TOL).unwrap();
        close(s.b_min, 0.667, 0.01);
        let s = informational_separation_minrate(&catalog::constant_source(), &ch, &[], &opts, DEFAULT_BISECTION_TOL).unwrap();
        assert_eq!(s.b_min, 0.0);
    }

    #[test]
    fn cooperation() {
        let ch = catalog::adder_mac();
        close(full_coop_minrate(&catalog::independent_xor(), &ch, &["W1"]).unwrap().b_min, 0.631, 0.01);
        assert_eq!(full_coop_minrate(&catalog::constant_source(), &ch, &[]).unwrap().b_min, 0.0);
        assert!(matches!(
            full_coop_minrate(&catalog::independent_bits(), &catalog::constant_mac(), &[]),
            Err(Error::Unachievable(_))
        ));
    }
}
