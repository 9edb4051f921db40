use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{ChannelModel, ProductInput, ReceiverLaw};
use crate::{Error, Result};

/// Shannon entropy in bits with `0 log 0 = 0`.
pub fn entropy_bits(p: &[f64]) -> f64 {
    p.iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| -v * v.log2())
        .sum::<f64>()
        .max(0.0)
}

/// Which conditional mutual information to evaluate at a receiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MiExpr {
    /// I(X1; Yk | X2, Q)
    X1GivenX2,
    /// I(X2; Yk | X1, Q)
    X2GivenX1,
    /// I(X1, X2; Yk | Q)
    Sum,
}

impl MiExpr {
    pub const ALL: [MiExpr; 3] = [MiExpr::X1GivenX2, MiExpr::X2GivenX1, MiExpr::Sum];

    fn slot(self) -> usize {
        match self {
            MiExpr::X1GivenX2 => 0,
            MiExpr::X2GivenX1 => 1,
            MiExpr::Sum => 2,
        }
    }
}

impl FromStr for MiExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x1" | "I(X1;Y|X2)" => Ok(MiExpr::X1GivenX2),
            "x2" | "I(X2;Y|X1)" => Ok(MiExpr::X2GivenX1),
            "sum" | "I(X1,X2;Y)" => Ok(MiExpr::Sum),
            other => Err(Error::InvalidArgument(format!("unknown expression `{other}`"))),
        }
    }
}

impl fmt::Display for MiExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MiExpr::X1GivenX2 => "I(X1;Y|X2,Q)",
            MiExpr::X2GivenX1 => "I(X2;Y|X1,Q)",
            MiExpr::Sum => "I(X1,X2;Y|Q)",
        })
    }
}

/// `[I(X1;Y|X2), I(X2;Y|X1), I(X1,X2;Y)]` for an arbitrary joint input `p(x1, x2)`
/// given row-major as `pxx[x1 * nx2 + x2]`.
pub fn joint_input_rates(law: &ReceiverLaw, pxx: &[f64]) -> [f64; 3] {
    let (nx1, nx2, ny) = (law.nx1, law.nx2, law.ny);
    let mut h_y_given_x12 = 0.0;
    let mut py = vec![0.0; ny];
    let mut py_x1 = vec![0.0; nx1 * ny];
    let mut py_x2 = vec![0.0; nx2 * ny];
    for x1 in 0..nx1 {
        for x2 in 0..nx2 {
            let w = pxx[x1 * nx2 + x2];
            if w <= 0.0 {
                continue;
            }
            let row = law.row(x1, x2);
            h_y_given_x12 += w * entropy_bits(row);
            for (y, &v) in row.iter().enumerate() {
                let m = w * v;
                py[y] += m;
                py_x1[x1 * ny + y] += m;
                py_x2[x2 * ny + y] += m;
            }
        }
    }
    // H(Y|X) = H(X, Y) - H(X), using unnormalized slices
    let cond = |table: &[f64]| -> f64 {
        table
            .chunks(ny)
            .map(|c| {
                let s: f64 = c.iter().sum();
                if s > 0.0 {
                    s * entropy_bits(&c.iter().map(|v| v / s).collect::<Vec<_>>())
                } else {
                    0.0
                }
            })
            .sum()
    };
    let h_y_x2 = cond(&py_x2);
    let h_y_x1 = cond(&py_x1);
    let h_y = entropy_bits(&py);
    [
        (h_y_x2 - h_y_given_x12).max(0.0),
        (h_y_x1 - h_y_given_x12).max(0.0),
        (h_y - h_y_given_x12).max(0.0),
    ]
}

/// Rates for independent inputs `p1 × p2` (no time sharing).
pub fn product_rates(law: &ReceiverLaw, p1: &[f64], p2: &[f64]) -> [f64; 3] {
    let mut pxx = Vec::with_capacity(p1.len() * p2.len());
    for &a in p1 {
        for &b in p2 {
            pxx.push(a * b);
        }
    }
    joint_input_rates(law, &pxx)
}

/// Exact conditional mutual information at receiver `receiver` (0-based)
/// under `p(q) p(x1|q) p(x2|q)` and the channel law.
pub fn mutual_info(
    channel: &ChannelModel,
    input: &ProductInput,
    expr: MiExpr,
    receiver: usize,
) -> Result<f64> {
    input.validate(usize::MAX)?;
    input.check_dims(channel.input_cards())?;
    let law = channel.receiver_law(receiver)?;
    Ok(input
        .q_weights
        .iter()
        .zip(input.x1.iter().zip(&input.x2))
        .map(|(&w, (p1, p2))| w * product_rates(&law, p1, p2)[expr.slot()])
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::JointPmf;

    fn adder() -> ChannelModel {
        ChannelModel::deterministic_mac(2, 2, 3, |a, b| a + b).unwrap()
    }

    #[test]
    fn adder_uniform_rates() {
        let ch = adder();
        let u = ProductInput::uniform(2, 2);
        assert!((mutual_info(&ch, &u, MiExpr::Sum, 0).unwrap() - 1.5).abs() < 1e-9);
        assert!((mutual_info(&ch, &u, MiExpr::X1GivenX2, 0).unwrap() - 1.0).abs() < 1e-12);
        assert!((mutual_info(&ch, &u, MiExpr::X2GivenX1, 0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_output_carries_nothing() {
        let ch = ChannelModel::deterministic_mac(3, 2, 2, |_, _| 1).unwrap();
        let input = ProductInput::single(vec![0.2, 0.3, 0.5], vec![0.6, 0.4]).unwrap();
        for e in MiExpr::ALL {
            assert_eq!(mutual_info(&ch, &input, e, 0).unwrap(), 0.0);
        }
    }

    #[test]
    fn errors_on_bad_receiver_or_dims() {
        let ch = adder();
        assert!(mutual_info(&ch, &ProductInput::uniform(2, 2), MiExpr::Sum, 1).is_err());
        assert!(matches!(
            mutual_info(&ch, &ProductInput::uniform(3, 2), MiExpr::Sum, 0),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn fast_path_matches_joint_pmf_route() {
        let ch = ChannelModel::mac(2, 3, 3, |a, b, c| {
            let base = [[0.7, 0.2, 0.1], [0.1, 0.3, 0.6], [0.25, 0.25, 0.5]];
            let r = base[b];
            if a == 0 { r[c] } else { r[(c + 1) % 3] }
        })
        .unwrap();
        let p1 = [0.3, 0.7];
        let p2 = [0.2, 0.5, 0.3];
        let law = ch.receiver_law(0).unwrap();
        let fast = product_rates(&law, &p1, &p2);
        let joint = JointPmf::from_fn(vec!["X1", "X2", "Y"], vec![2, 3, 3], |a| {
            p1[a[0]] * p2[a[1]] * law.prob(a[0], a[1], a[2])
        })
        .unwrap();
        let i1 = joint.mutual_info(&["X1"], &["Y"], &["X2"]).unwrap();
        let i2 = joint.mutual_info(&["X2"], &["Y"], &["X1"]).unwrap();
        let is = joint.mutual_info(&["X1", "X2"], &["Y"], &[]).unwrap();
        assert!((fast[0] - i1).abs() < 1e-12);
        assert!((fast[1] - i2).abs() < 1e-12);
        assert!((fast[2] - is).abs() < 1e-12);
    }
}
