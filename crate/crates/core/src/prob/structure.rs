use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{ChannelModel, JointPmf, NORMALIZATION_TOL};
use crate::{Error, Result};

/// A structural hypothesis on a joint pmf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pattern {
    /// `A - B - C`: A and C are conditionally independent given B.
    Markov { a: Vec<String>, b: Vec<String>, c: Vec<String> },
    /// A and B are independent.
    Independent { a: Vec<String>, b: Vec<String> },
}

impl Pattern {
    pub fn markov(a: &[&str], b: &[&str], c: &[&str]) -> Self {
        Pattern::Markov { a: owned(a), b: owned(b), c: owned(c) }
    }

    pub fn independent(a: &[&str], b: &[&str]) -> Self {
        Pattern::Independent { a: owned(a), b: owned(b) }
    }
}

fn owned(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Markov { a, b, c } => {
                write!(f, "markov({}-{}-{})", a.join(","), b.join(","), c.join(","))
            }
            Pattern::Independent { a, b } => write!(f, "independent({};{})", a.join(","), b.join(",")),
        }
    }
}

impl FromStr for Pattern {
    type Err = Error;

    /// Parses `markov(S1-W1-S2)`, `independent(S1;S2,W1)` and
    /// `independent(S1;S2|W1)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("cannot parse pattern `{s}`"));
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let body = rest.strip_suffix(')').ok_or_else(bad)?;
        let set = |t: &str| -> Vec<String> {
            t.split(',').map(str::trim).filter(|x| !x.is_empty()).map(String::from).collect()
        };
        match head.trim() {
            "markov" => {
                let parts: Vec<&str> = body.split('-').collect();
                if parts.len() != 3 {
                    return Err(bad());
                }
                Ok(Pattern::Markov { a: set(parts[0]), b: set(parts[1]), c: set(parts[2]) })
            }
            "independent" => {
                let (a, rest) = body.split_once(';').ok_or_else(bad)?;
                match rest.split_once('|') {
                    Some((b, given)) => Ok(Pattern::Markov { a: set(a), b: set(given), c: set(b) }),
                    None => Ok(Pattern::Independent { a: set(a), b: set(rest) }),
                }
            }
            _ => Err(bad()),
        }
    }
}

/// Outcome of a structural check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureResult {
    pub name: String,
    pub holds: bool,
    pub max_deviation: f64,
}

impl StructureResult {
    pub fn new(name: impl Into<String>, max_deviation: f64, tol: f64) -> Self {
        Self { name: name.into(), holds: max_deviation <= tol, max_deviation }
    }
}

/// Checks a factorization identity; the deviation is the largest absolute
/// gap `|p(a,c|b) - p(a|b) p(c|b)|` over cells with `p(b) > 0`.
pub fn structure_check(joint: &JointPmf, pattern: &Pattern) -> Result<StructureResult> {
    let (a, b, c) = match pattern {
        Pattern::Markov { a, b, c } => (a, b.clone(), c),
        Pattern::Independent { a, b } => (a, Vec::new(), b),
    };
    if a.is_empty() || c.is_empty() {
        return Err(Error::InvalidArgument(format!("pattern `{pattern}` has an empty side")));
    }
    let all: Vec<&str> = a.iter().chain(b.iter()).chain(c.iter()).map(String::as_str).collect();
    for (i, n) in all.iter().enumerate() {
        if all[..i].contains(n) {
            return Err(Error::OverlappingSets(vec![n.to_string()]));
        }
    }
    let ia = joint.indices(&a.iter().map(String::as_str).collect::<Vec<_>>())?;
    let ib = joint.indices(&b.iter().map(String::as_str).collect::<Vec<_>>())?;
    let ic = joint.indices(&c.iter().map(String::as_str).collect::<Vec<_>>())?;
    let size = |idx: &[usize]| idx.iter().map(|&i| joint.cards()[i]).product::<usize>();
    let (na, nb, nc) = (size(&ia), size(&ib), size(&ic));

    // joint table ordered (B, A, C)
    let mut order = ib.clone();
    order.extend(&ia);
    order.extend(&ic);
    let pbac = joint.marginal_table(&order);
    let mut dev: f64 = 0.0;
    for bi in 0..nb {
        let block = &pbac[bi * na * nc..(bi + 1) * na * nc];
        let pb: f64 = block.iter().sum();
        if pb <= 0.0 {
            continue;
        }
        let pa: Vec<f64> = (0..na).map(|x| block[x * nc..(x + 1) * nc].iter().sum::<f64>() / pb).collect();
        let pc: Vec<f64> = (0..nc).map(|z| (0..na).map(|x| block[x * nc + z]).sum::<f64>() / pb).collect();
        for x in 0..na {
            for z in 0..nc {
                dev = dev.max((block[x * nc + z] / pb - pa[x] * pc[z]).abs());
            }
        }
    }
    Ok(StructureResult::new(pattern.to_string(), dev, NORMALIZATION_TOL))
}

/// No multiple-access interference: the channel law factorizes into one
/// factor per transmitter.
pub fn no_mai_check(channel: &ChannelModel) -> StructureResult {
    let dev = match channel.outputs().len() {
        4 => channel.no_mai_deviation(&[0, 2], &[1, 3]),
        2 => channel.no_mai_deviation(&[0], &[1]),
        _ => f64::INFINITY,
    };
    StructureResult::new("factorized-no-mai", dev, NORMALIZATION_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xor_source() -> JointPmf {
        JointPmf::from_fn(vec!["S1", "S2", "W"], vec![2, 2, 2], |a| {
            if a[2] == a[0] ^ a[1] { 0.25 } else { 0.0 }
        })
        .unwrap()
    }

    #[test]
    fn xor_side_information_breaks_conditional_independence() {
        let p = xor_source();
        let ind = structure_check(&p, &Pattern::independent(&["S1"], &["S2"])).unwrap();
        assert!(ind.holds);
        let cond = structure_check(&p, &"independent(S1;S2|W)".parse().unwrap()).unwrap();
        assert!(!cond.holds);
        assert!((cond.max_deviation - 0.25).abs() < 1e-12);
    }

    #[test]
    fn parse_round_trip() {
        for s in ["markov(S1-W1-S2)", "independent(S1;S2,W1)", "markov(S1,W2-W1-S2)"] {
            let p: Pattern = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert!("markov(S1-W1)".parse::<Pattern>().is_err());
        assert!("foo(S1;S2)".parse::<Pattern>().is_err());
    }

    #[test]
    fn unknown_variable_is_an_error() {
        let p = xor_source();
        assert!(matches!(
            structure_check(&p, &Pattern::independent(&["S1"], &["Z"])),
            Err(Error::UnknownVariable(_))
        ));
    }
}
