use serde::{Deserialize, Serialize};

use super::{entropy_bits, JointPmf, SUPPORT_EPS};
use crate::{Error, Result};

/// Gács–Körner common part `U = f(S1) = g(S2)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommonPart {
    /// `map1[s1]` is the component label of `s1`.
    pub map1: Vec<usize>,
    pub map2: Vec<usize>,
    pub u_cardinality: usize,
    pub u_entropy: f64,
}

/// Labels the connected components of the bipartite support graph of a
/// two-variable pmf. Symbols of zero marginal probability are attached to
/// component 0 so the maps stay total.
pub fn gacs_korner_common(pair: &JointPmf) -> Result<CommonPart> {
    if pair.names().len() != 2 {
        return Err(Error::InvalidArgument(format!(
            "common part needs exactly two variables, got {}",
            pair.names().len()
        )));
    }
    let (n1, n2) = (pair.cards()[0], pair.cards()[1]);
    let t = pair.table();
    if t.iter().all(|&p| p <= SUPPORT_EPS) {
        return Err(Error::EmptySupport);
    }
    // union-find over n1 + n2 nodes
    let mut parent: Vec<usize> = (0..n1 + n2).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for a in 0..n1 {
        for b in 0..n2 {
            if t[a * n2 + b] > SUPPORT_EPS {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, n1 + b));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
    }
    let p1: Vec<f64> = (0..n1).map(|a| t[a * n2..(a + 1) * n2].iter().sum()).collect();
    let p2: Vec<f64> = (0..n2).map(|b| (0..n1).map(|a| t[a * n2 + b]).sum()).collect();

    // label components in order of first appearance among supported symbols
    let mut labels: Vec<Option<usize>> = vec![None; n1 + n2];
    let mut next = 0;
    let mut label_of = |node: usize, parent: &mut Vec<usize>, labels: &mut Vec<Option<usize>>| {
        let r = find(parent, node);
        *labels[r].get_or_insert_with(|| {
            next += 1;
            next - 1
        })
    };
    let mut map1 = vec![0; n1];
    let mut map2 = vec![0; n2];
    for a in 0..n1 {
        if p1[a] > SUPPORT_EPS {
            map1[a] = label_of(a, &mut parent, &mut labels);
        }
    }
    for b in 0..n2 {
        if p2[b] > SUPPORT_EPS {
            map2[b] = label_of(n1 + b, &mut parent, &mut labels);
        }
    }
    let u_cardinality = next;
    let mut pu = vec![0.0; u_cardinality];
    for a in 0..n1 {
        pu[map1[a]] += p1[a];
    }
    let u_entropy = if u_cardinality <= 1 { 0.0 } else { entropy_bits(&pu) };
    Ok(CommonPart { map1, map2, u_cardinality, u_entropy })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(n1: usize, n2: usize, f: impl Fn(usize, usize) -> f64) -> JointPmf {
        JointPmf::from_fn(vec!["S1", "S2"], vec![n1, n2], |a| f(a[0], a[1])).unwrap()
    }

    #[test]
    fn cover_salehi_has_trivial_common_part() {
        let p = pair(2, 2, |a, b| if (a, b) == (1, 0) { 0.0 } else { 1.0 / 3.0 });
        let u = gacs_korner_common(&p).unwrap();
        assert_eq!(u.u_cardinality, 1);
        assert_eq!(u.u_entropy, 0.0);
    }

    #[test]
    fn block_diagonal_support() {
        let p = pair(2, 2, |a, b| if a == b { 0.5 } else { 0.0 });
        let u = gacs_korner_common(&p).unwrap();
        assert_eq!(u.u_cardinality, 2);
        assert!((u.u_entropy - 1.0).abs() < 1e-12);
        assert_eq!(u.map1, u.map2);
    }

    #[test]
    fn identical_ternary_sources() {
        let p = pair(3, 3, |a, b| if a == b { 1.0 / 3.0 } else { 0.0 });
        let u = gacs_korner_common(&p).unwrap();
        assert_eq!(u.u_cardinality, 3);
        assert!((u.u_entropy - 3f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn rejects_wrong_arity() {
        let p = JointPmf::from_fn(vec!["A"], vec![2], |_| 0.5).unwrap();
        assert!(gacs_korner_common(&p).is_err());
    }
}
