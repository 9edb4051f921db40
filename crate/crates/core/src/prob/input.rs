use serde::{Deserialize, Serialize};

use super::check_probability_vector;
use crate::{Error, Result};

/// Default bound on the time-sharing alphabet.
pub const DEFAULT_MAX_Q: usize = 4;

/// Time-sharing input `p(q) p(x1|q) p(x2|q)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductInput {
    pub q_weights: Vec<f64>,
    /// `x1[q]` is `p(x1 | q)`.
    pub x1: Vec<Vec<f64>>,
    pub x2: Vec<Vec<f64>>,
}

impl ProductInput {
    pub fn new(q_weights: Vec<f64>, x1: Vec<Vec<f64>>, x2: Vec<Vec<f64>>) -> Result<Self> {
        let input = Self { q_weights, x1, x2 };
        input.validate(usize::MAX)?;
        Ok(input)
    }

    /// A single input pair with no time sharing.
    pub fn single(p1: Vec<f64>, p2: Vec<f64>) -> Result<Self> {
        Self::new(vec![1.0], vec![p1], vec![p2])
    }

    pub fn uniform(nx1: usize, nx2: usize) -> Self {
        Self {
            q_weights: vec![1.0],
            x1: vec![vec![1.0 / nx1 as f64; nx1]],
            x2: vec![vec![1.0 / nx2 as f64; nx2]],
        }
    }

    pub fn q_len(&self) -> usize {
        self.q_weights.len()
    }

    pub fn validate(&self, max_q: usize) -> Result<()> {
        let q = self.q_weights.len();
        if q == 0 || self.x1.len() != q || self.x2.len() != q {
            return Err(Error::DimensionMismatch(format!(
                "time-sharing alphabet of size {q} with {} and {} conditional rows",
                self.x1.len(),
                self.x2.len()
            )));
        }
        if q > max_q {
            return Err(Error::InvalidArgument(format!(
                "|Q| = {q} exceeds the bound {max_q}"
            )));
        }
        check_probability_vector(&self.q_weights, "p(q)")?;
        for (i, row) in self.x1.iter().enumerate() {
            check_probability_vector(row, &format!("p(x1|q={i})"))?;
        }
        for (i, row) in self.x2.iter().enumerate() {
            check_probability_vector(row, &format!("p(x2|q={i})"))?;
        }
        let (n1, n2) = (self.x1[0].len(), self.x2[0].len());
        if self.x1.iter().any(|r| r.len() != n1) || self.x2.iter().any(|r| r.len() != n2) {
            return Err(Error::DimensionMismatch("ragged conditional rows".into()));
        }
        Ok(())
    }

    pub fn check_dims(&self, input_cards: [usize; 2]) -> Result<()> {
        if self.x1.iter().any(|r| r.len() != input_cards[0])
            || self.x2.iter().any(|r| r.len() != input_cards[1])
        {
            return Err(Error::DimensionMismatch(format!(
                "input rows do not match channel input alphabets {input_cards:?}"
            )));
        }
        Ok(())
    }
}

/// Source-conditioned time-sharing input `p(q) p(x1|q,s1) p(x2|q,s2)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionedInput {
    pub q_weights: Vec<f64>,
    /// `x1[q][s1]` is `p(x1 | q, s1)`.
    pub x1: Vec<Vec<Vec<f64>>>,
    pub x2: Vec<Vec<Vec<f64>>>,
}

impl ConditionedInput {
    pub fn new(q_weights: Vec<f64>, x1: Vec<Vec<Vec<f64>>>, x2: Vec<Vec<Vec<f64>>>) -> Result<Self> {
        let input = Self { q_weights, x1, x2 };
        input.validate(usize::MAX)?;
        Ok(input)
    }

    /// Uncoded transmission `x_k = map_k(s_k)` without time sharing.
    pub fn uncoded(map1: &[usize], nx1: usize, map2: &[usize], nx2: usize) -> Result<Self> {
        let rows = |map: &[usize], nx: usize| -> Result<Vec<Vec<f64>>> {
            map.iter()
                .map(|&x| {
                    if x >= nx {
                        return Err(Error::InvalidArgument(format!(
                            "symbol map value {x} outside input alphabet of size {nx}"
                        )));
                    }
                    let mut r = vec![0.0; nx];
                    r[x] = 1.0;
                    Ok(r)
                })
                .collect()
        };
        Self::new(vec![1.0], vec![rows(map1, nx1)?], vec![rows(map2, nx2)?])
    }

    /// Channel inputs drawn independently of the sources.
    pub fn from_product(input: &ProductInput, ns1: usize, ns2: usize) -> Self {
        Self {
            q_weights: input.q_weights.clone(),
            x1: input.x1.iter().map(|r| vec![r.clone(); ns1]).collect(),
            x2: input.x2.iter().map(|r| vec![r.clone(); ns2]).collect(),
        }
    }

    pub fn q_len(&self) -> usize {
        self.q_weights.len()
    }

    pub fn validate(&self, max_q: usize) -> Result<()> {
        let q = self.q_weights.len();
        if q == 0 || self.x1.len() != q || self.x2.len() != q {
            return Err(Error::DimensionMismatch("conditional tables do not match p(q)".into()));
        }
        if q > max_q {
            return Err(Error::InvalidArgument(format!(
                "|Q| = {q} exceeds the bound {max_q}"
            )));
        }
        check_probability_vector(&self.q_weights, "p(q)")?;
        for (label, table) in [("x1", &self.x1), ("x2", &self.x2)] {
            let ns = table[0].len();
            let nx = table[0].first().map_or(0, Vec::len);
            for (qi, rows) in table.iter().enumerate() {
                if rows.len() != ns || rows.iter().any(|r| r.len() != nx) {
                    return Err(Error::DimensionMismatch(format!("ragged p({label}|q,s) table")));
                }
                for (s, row) in rows.iter().enumerate() {
                    check_probability_vector(row, &format!("p({label}|q={qi},s={s})"))?;
                }
            }
        }
        Ok(())
    }

    /// Checks `(|S1|, |S2|)` and `(|X1|, |X2|)` against the table shapes.
    pub fn check_dims(&self, source_cards: [usize; 2], input_cards: [usize; 2]) -> Result<()> {
        let ok = |t: &Vec<Vec<Vec<f64>>>, ns: usize, nx: usize| {
            t.iter().all(|rows| rows.len() == ns && rows.iter().all(|r| r.len() == nx))
        };
        if !ok(&self.x1, source_cards[0], input_cards[0]) || !ok(&self.x2, source_cards[1], input_cards[1]) {
            return Err(Error::DimensionMismatch(format!(
                "conditioned input does not match sources {source_cards:?} and inputs {input_cards:?}"
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_rows_and_bound() {
        let p = ProductInput::new(
            vec![0.5, 0.5],
            vec![vec![1.0, 0.0], vec![0.5, 0.5]],
            vec![vec![0.2, 0.8], vec![0.0, 1.0]],
        )
        .unwrap();
        assert!(p.validate(2).is_ok());
        assert!(p.validate(1).is_err());
        assert!(ProductInput::single(vec![0.3, 0.3], vec![1.0]).is_err());
        assert!(p.check_dims([2, 3]).is_err());
    }

    #[test]
    fn uncoded_map_is_deterministic() {
        let c = ConditionedInput::uncoded(&[0, 1], 2, &[1, 0], 2).unwrap();
        assert_eq!(c.x2[0][0], vec![0.0, 1.0]);
        assert!(ConditionedInput::uncoded(&[0, 2], 2, &[0, 1], 2).is_err());
        assert!(c.check_dims([2, 2], [2, 2]).is_ok());
        assert!(c.check_dims([3, 2], [2, 2]).is_err());
    }
}
