use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{check_probability_vector, entropy_bits};
use crate::{Error, Result};

/// A joint probability mass function over named finite random variables.
///
/// The table is stored row-major: the last variable varies fastest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JointPmf {
    names: Vec<String>,
    cards: Vec<usize>,
    table: Vec<f64>,
}

impl JointPmf {
    pub fn new<S: Into<String>>(names: Vec<S>, cards: Vec<usize>, table: Vec<f64>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() != cards.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} variable names but {} cardinalities",
                names.len(),
                cards.len()
            )));
        }
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::InvalidArgument(format!("duplicate variable name `{n}`")));
            }
        }
        if cards.iter().any(|&c| c == 0) {
            return Err(Error::InvalidArgument("cardinalities must be positive".into()));
        }
        let len: usize = cards.iter().product();
        if table.len() != len {
            return Err(Error::DimensionMismatch(format!(
                "table has {} entries, cardinalities require {}",
                table.len(),
                len
            )));
        }
        check_probability_vector(&table, "joint table")?;
        Ok(Self { names, cards, table })
    }

    /// Builds a pmf by evaluating `f` on every assignment.
    pub fn from_fn<S, F>(names: Vec<S>, cards: Vec<usize>, f: F) -> Result<Self>
    where
        S: Into<String>,
        F: Fn(&[usize]) -> f64,
    {
        let len: usize = cards.iter().product();
        let mut table = Vec::with_capacity(len);
        let mut assignment = vec![0usize; cards.len()];
        for _ in 0..len {
            table.push(f(&assignment));
            advance(&mut assignment, &cards);
        }
        Self::new(names, cards, table)
    }

    /// Point mass on a single assignment.
    pub fn point_mass<S: Into<String>>(names: Vec<S>, cards: Vec<usize>, at: &[usize]) -> Result<Self> {
        Self::from_fn(names, cards, |a| if a == at { 1.0 } else { 0.0 })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn cards(&self) -> &[usize] {
        &self.cards
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    pub fn has(&self, name: &str) -> bool {
        self.names.iter().any(|n| n == name)
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn indices(&self, names: &[&str]) -> Result<Vec<usize>> {
        names.iter().map(|n| self.index_of(n)).collect()
    }

    pub fn cardinality(&self, name: &str) -> Result<usize> {
        Ok(self.cards[self.index_of(name)?])
    }

    /// Decodes a flat table index into per-variable values.
    pub fn assignment(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.cards.len()];
        for (slot, &c) in out.iter_mut().zip(&self.cards).rev() {
            *slot = flat % c;
            flat /= c;
        }
        out
    }

    /// Marginal over the variables at `vars` (in that order), row-major.
    pub fn marginal_table(&self, vars: &[usize]) -> Vec<f64> {
        let mut strides = vec![0usize; self.cards.len()];
        let mut s = 1;
        for &v in vars.iter().rev() {
            strides[v] = s;
            s *= self.cards[v];
        }
        let mut out = vec![0.0; s];
        let mut assignment = vec![0usize; self.cards.len()];
        let mut target = 0usize;
        for &p in &self.table {
            out[target] += p;
            // odometer step, keeping `target` in sync
            for i in (0..self.cards.len()).rev() {
                assignment[i] += 1;
                target += strides[i];
                if assignment[i] < self.cards[i] {
                    break;
                }
                target -= strides[i] * self.cards[i];
                assignment[i] = 0;
            }
        }
        out
    }

    pub fn marginal(&self, names: &[&str]) -> Result<JointPmf> {
        let idx = self.indices(names)?;
        let cards = idx.iter().map(|&i| self.cards[i]).collect();
        Ok(JointPmf {
            names: names.iter().map(|s| s.to_string()).collect(),
            cards,
            table: self.marginal_table(&idx),
        })
    }

    pub fn entropy_of(&self, vars: &[usize]) -> f64 {
        if vars.is_empty() {
            return 0.0;
        }
        entropy_bits(&self.marginal_table(vars))
    }

    /// H(targets | given) in bits.
    pub fn entropy_cond(&self, targets: &[&str], given: &[&str]) -> Result<f64> {
        let t = self.indices(targets)?;
        let g = self.indices(given)?;
        let overlap: Vec<String> = targets
            .iter()
            .filter(|n| given.contains(n))
            .map(|s| s.to_string())
            .collect();
        if !overlap.is_empty() {
            return Err(Error::OverlappingSets(overlap));
        }
        let mut all = g.clone();
        all.extend(t.iter().copied().filter(|i| !g.contains(i)));
        Ok((self.entropy_of(&all) - self.entropy_of(&g)).max(0.0))
    }

    pub fn entropy(&self, targets: &[&str]) -> Result<f64> {
        self.entropy_cond(targets, &[])
    }

    /// I(a ; b | given) in bits.
    pub fn mutual_info(&self, a: &[&str], b: &[&str], given: &[&str]) -> Result<f64> {
        let mut bg: Vec<&str> = b.to_vec();
        bg.extend_from_slice(given);
        let h_a = self.entropy_cond(a, given)?;
        let h_ab = self.entropy_cond(a, &bg)?;
        Ok((h_a - h_ab).max(0.0))
    }

    /// Appends a variable that is a deterministic function of the existing ones.
    pub fn with_function_var<F>(&self, name: &str, card: usize, f: F) -> Result<JointPmf>
    where
        F: Fn(&[usize]) -> usize,
    {
        if self.has(name) {
            return Err(Error::InvalidArgument(format!("variable `{name}` already exists")));
        }
        let mut table = vec![0.0; self.table.len() * card];
        let mut assignment = vec![0usize; self.cards.len()];
        for (i, &p) in self.table.iter().enumerate() {
            let u = f(&assignment);
            if u >= card {
                return Err(Error::InvalidArgument(format!(
                    "function value {u} outside alphabet of `{name}`"
                )));
            }
            table[i * card + u] = p;
            advance(&mut assignment, &self.cards);
        }
        let mut names = self.names.clone();
        names.push(name.to_string());
        let mut cards = self.cards.clone();
        cards.push(card);
        Ok(JointPmf { names, cards, table })
    }

    /// Iterates over `(assignment, probability)` for every cell.
    pub fn cells(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        self.table.iter().enumerate().map(|(i, &p)| (self.assignment(i), p))
    }
}

/// Row-major odometer increment.
pub(crate) fn advance(assignment: &mut [usize], cards: &[usize]) {
    for i in (0..cards.len()).rev() {
        assignment[i] += 1;
        if assignment[i] < cards[i] {
            return;
        }
        assignment[i] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cover_salehi() -> JointPmf {
        JointPmf::from_fn(vec!["S1", "S2", "W1"], vec![2, 2, 2], |a| match (a[0], a[1], a[2]) {
            (0, 0, 0) | (1, 1, 1) => 1.0 / 3.0,
            (0, 1, 0) | (0, 1, 1) => 1.0 / 6.0,
            _ => 0.0,
        })
        .unwrap()
    }

    #[test]
    fn cover_salehi_entropies() {
        let p = cover_salehi();
        assert!((p.entropy(&["S1", "S2"]).unwrap() - 3f64.log2()).abs() < 1e-12);
        let h = p.entropy_cond(&["S1"], &["W1"]).unwrap();
        assert!((h - 0.459).abs() < 1e-3, "{h}");
        let h2 = p.entropy_cond(&["S2"], &["W1"]).unwrap();
        assert!((h - h2).abs() < 1e-12);
    }

    #[test]
    fn point_mass_has_zero_entropy() {
        let p = JointPmf::point_mass(vec!["S1", "S2"], vec![3, 2], &[2, 1]).unwrap();
        assert_eq!(p.entropy(&["S1"]).unwrap(), 0.0);
        assert_eq!(p.entropy(&["S1", "S2"]).unwrap(), 0.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            JointPmf::new(vec!["A", "A"], vec![1, 1], vec![1.0]),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            JointPmf::new(vec!["A"], vec![2], vec![0.5, 0.6]),
            Err(Error::InvalidDistribution(_))
        ));
        assert!(matches!(
            JointPmf::new(vec!["A"], vec![2], vec![1.0]),
            Err(Error::DimensionMismatch(_))
        ));
        let p = cover_salehi();
        assert!(matches!(p.entropy_cond(&["S9"], &[]), Err(Error::UnknownVariable(_))));
        assert!(matches!(
            p.entropy_cond(&["S1", "W1"], &["W1"]),
            Err(Error::OverlappingSets(_))
        ));
    }

    #[test]
    fn marginal_matches_manual_sum() {
        let p = cover_salehi();
        let m = p.marginal(&["W1", "S2"]).unwrap();
        // p(w1=0, s2=1) = 1/6, p(w1=1, s2=1) = 1/3 + 1/6
        assert!((m.table()[1] - 1.0 / 6.0).abs() < 1e-15);
        assert!((m.table()[3] - 0.5).abs() < 1e-15);
        assert!((m.table()[0] - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(m.table()[2], 0.0);
    }

    #[test]
    fn function_var_is_deterministic() {
        let p = cover_salehi();
        let q = p.with_function_var("X", 2, |a| a[0] ^ a[1]).unwrap();
        assert!(q.entropy_cond(&["X"], &["S1", "S2"]).unwrap().abs() < 1e-12);
    }
}
