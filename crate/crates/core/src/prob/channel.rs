use std::fmt;

use serde::{Deserialize, Serialize};

use super::{check_probability_vector, NORMALIZATION_TOL};
use crate::{Error, Result};

/// Structural role of a two-input channel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChannelKind {
    /// One receiver observing a single output.
    Mac,
    /// Two receivers, each decoding both sources. Also used for interference channels.
    Compound,
    /// Two users; user `k` observes output `Yk` and knows its own source.
    TwoWay,
    /// Compound MAC with no multiple-access interference: outputs are
    /// `[Y11, Y21, Y12, Y22]` where `Yik` runs from transmitter `i` to receiver `k`.
    NoMai,
}

impl ChannelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ChannelKind::Mac => "mac",
            ChannelKind::Compound => "compound",
            ChannelKind::TwoWay => "two-way",
            ChannelKind::NoMai => "no-mai",
        }
    }

    pub fn default_receivers(self, outputs: usize) -> Option<Vec<Vec<usize>>> {
        match (self, outputs) {
            (ChannelKind::Mac, 1) => Some(vec![vec![0]]),
            (ChannelKind::Compound | ChannelKind::TwoWay, 2) => Some(vec![vec![0], vec![1]]),
            (ChannelKind::NoMai, 4) => Some(vec![vec![0, 1], vec![2, 3]]),
            _ => None,
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputVar {
    pub name: String,
    pub cardinality: usize,
}

/// Conditional law `P(outputs | x1, x2)` of a discrete memoryless channel.
///
/// The table is row-major over `(x1, x2, o_1, ..., o_k)`. Each receiver
/// observes a subset of the output variables; its effective output alphabet
/// is the product of theirs.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelModel {
    kind: ChannelKind,
    input_cards: [usize; 2],
    outputs: Vec<OutputVar>,
    receivers: Vec<Vec<usize>>,
    table: Vec<f64>,
}

impl ChannelModel {
    pub fn new(
        kind: ChannelKind,
        input_cards: [usize; 2],
        outputs: Vec<OutputVar>,
        receivers: Option<Vec<Vec<usize>>>,
        table: Vec<f64>,
    ) -> Result<Self> {
        if input_cards.contains(&0) || outputs.iter().any(|o| o.cardinality == 0) {
            return Err(Error::InvalidArgument("cardinalities must be positive".into()));
        }
        let receivers = match receivers {
            Some(r) => r,
            None => kind.default_receivers(outputs.len()).ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "channel kind `{kind}` cannot have {} output variables",
                    outputs.len()
                ))
            })?,
        };
        let expected_receivers = if kind == ChannelKind::Mac { 1 } else { 2 };
        if receivers.len() != expected_receivers {
            return Err(Error::InvalidArgument(format!(
                "channel kind `{kind}` needs {expected_receivers} receiver(s), got {}",
                receivers.len()
            )));
        }
        if receivers
            .iter()
            .any(|r| r.is_empty() || r.iter().any(|&o| o >= outputs.len()))
        {
            return Err(Error::InvalidArgument("receiver refers to an unknown output".into()));
        }
        let rows = input_cards[0] * input_cards[1];
        let per_row: usize = outputs.iter().map(|o| o.cardinality).product();
        if table.len() != rows * per_row {
            return Err(Error::DimensionMismatch(format!(
                "channel table has {} entries, expected {}",
                table.len(),
                rows * per_row
            )));
        }
        for (r, row) in table.chunks(per_row).enumerate() {
            check_probability_vector(row, &format!("channel row {r}"))?;
        }
        let model = Self { kind, input_cards, outputs, receivers, table };
        if kind == ChannelKind::NoMai {
            if model.outputs.len() != 4 {
                return Err(Error::InvalidArgument(
                    "no-mai channels have outputs [Y11, Y21, Y12, Y22]".into(),
                ));
            }
            let dev = model.no_mai_deviation(&[0, 2], &[1, 3]);
            if dev > NORMALIZATION_TOL {
                return Err(Error::InvalidDistribution(format!(
                    "channel declared no-mai does not factorize (deviation {dev:.3e})"
                )));
            }
        }
        Ok(model)
    }

    /// Single-receiver MAC from a law `w(x1, x2, y)`.
    pub fn mac<F>(x1: usize, x2: usize, y: usize, law: F) -> Result<Self>
    where
        F: Fn(usize, usize, usize) -> f64,
    {
        let mut table = Vec::with_capacity(x1 * x2 * y);
        for a in 0..x1 {
            for b in 0..x2 {
                for c in 0..y {
                    table.push(law(a, b, c));
                }
            }
        }
        Self::new(ChannelKind::Mac, [x1, x2], vec![output("Y1", y)], None, table)
    }

    /// Deterministic MAC `y = f(x1, x2)`.
    pub fn deterministic_mac<F>(x1: usize, x2: usize, y: usize, f: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> usize,
    {
        Self::mac(x1, x2, y, |a, b, c| if f(a, b) == c { 1.0 } else { 0.0 })
    }

    /// Two-output channel from a law `w(x1, x2, y1, y2)`.
    pub fn two_output<F>(kind: ChannelKind, x: [usize; 2], y: [usize; 2], law: F) -> Result<Self>
    where
        F: Fn(usize, usize, usize, usize) -> f64,
    {
        let mut table = Vec::with_capacity(x[0] * x[1] * y[0] * y[1]);
        for a in 0..x[0] {
            for b in 0..x[1] {
                for c in 0..y[0] {
                    for d in 0..y[1] {
                        table.push(law(a, b, c, d));
                    }
                }
            }
        }
        Self::new(kind, x, vec![output("Y1", y[0]), output("Y2", y[1])], None, table)
    }

    /// Compound MAC whose two receivers see independent copies of one MAC law.
    pub fn duplicated(mac: &ChannelModel, kind: ChannelKind) -> Result<Self> {
        let law = mac.receiver_law(0)?;
        Self::two_output(kind, mac.input_cards, [law.ny, law.ny], |a, b, c, d| {
            law.prob(a, b, c) * law.prob(a, b, d)
        })
    }

    /// No-MAI compound channel from per-transmitter laws
    /// `tx1(x1, y11, y12)` and `tx2(x2, y21, y22)`.
    pub fn no_mai<F, G>(x: [usize; 2], y1: [usize; 2], y2: [usize; 2], tx1: F, tx2: G) -> Result<Self>
    where
        F: Fn(usize, usize, usize) -> f64,
        G: Fn(usize, usize, usize) -> f64,
    {
        // y1 = [|Y11|, |Y12|], y2 = [|Y21|, |Y22|]
        let outputs = vec![
            output("Y11", y1[0]),
            output("Y21", y2[0]),
            output("Y12", y1[1]),
            output("Y22", y2[1]),
        ];
        let mut table = Vec::new();
        for a in 0..x[0] {
            for b in 0..x[1] {
                for y11 in 0..y1[0] {
                    for y21 in 0..y2[0] {
                        for y12 in 0..y1[1] {
                            for y22 in 0..y2[1] {
                                table.push(tx1(a, y11, y12) * tx2(b, y21, y22));
                            }
                        }
                    }
                }
            }
        }
        Self::new(ChannelKind::NoMai, x, outputs, None, table)
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn input_cards(&self) -> [usize; 2] {
        self.input_cards
    }

    pub fn outputs(&self) -> &[OutputVar] {
        &self.outputs
    }

    pub fn receivers(&self) -> &[Vec<usize>] {
        &self.receivers
    }

    pub fn receiver_count(&self) -> usize {
        self.receivers.len()
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    /// Number of joint output tuples per input pair.
    pub fn output_tuples(&self) -> usize {
        self.outputs.iter().map(|o| o.cardinality).product()
    }

    pub fn row(&self, x1: usize, x2: usize) -> &[f64] {
        let per_row = self.output_tuples();
        let r = x1 * self.input_cards[1] + x2;
        &self.table[r * per_row..(r + 1) * per_row]
    }

    /// Splits a flat output-tuple index into per-output values.
    pub fn decode_tuple(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.outputs.len()];
        for (slot, o) in out.iter_mut().zip(&self.outputs).rev() {
            *slot = flat % o.cardinality;
            flat /= o.cardinality;
        }
        out
    }

    /// Composite symbol observed by receiver `k` for a given output tuple.
    pub fn receiver_symbol(&self, k: usize, tuple: &[usize]) -> usize {
        self.receivers[k]
            .iter()
            .fold(0, |acc, &o| acc * self.outputs[o].cardinality + tuple[o])
    }

    pub fn receiver_alphabet(&self, k: usize) -> usize {
        self.receivers[k].iter().map(|&o| self.outputs[o].cardinality).product()
    }

    /// Marginal law `P(y_k | x1, x2)` seen by receiver `k` (0-based).
    pub fn receiver_law(&self, k: usize) -> Result<ReceiverLaw> {
        if k >= self.receivers.len() {
            return Err(Error::InvalidArgument(format!(
                "receiver {} does not exist on a `{}` channel",
                k + 1,
                self.kind
            )));
        }
        let [nx1, nx2] = self.input_cards;
        let ny = self.receiver_alphabet(k);
        let per_row = self.output_tuples();
        let mut p = vec![0.0; nx1 * nx2 * ny];
        for x1 in 0..nx1 {
            for x2 in 0..nx2 {
                let base = (x1 * nx2 + x2) * ny;
                for (t, &w) in self.row(x1, x2).iter().enumerate().take(per_row) {
                    if w > 0.0 {
                        let y = self.receiver_symbol(k, &self.decode_tuple(t));
                        p[base + y] += w;
                    }
                }
            }
        }
        Ok(ReceiverLaw { nx1, nx2, ny, p })
    }

    /// Maximum deviation of `P(o | x1, x2)` from `A(o_tx1 | x1) B(o_tx2 | x2)`,
    /// where `tx1` and `tx2` partition the output variables by transmitter.
    pub fn no_mai_deviation(&self, tx1: &[usize], tx2: &[usize]) -> f64 {
        let [nx1, nx2] = self.input_cards;
        let cards: Vec<usize> = self.outputs.iter().map(|o| o.cardinality).collect();
        let size = |vars: &[usize]| vars.iter().map(|&v| cards[v]).product::<usize>();
        let index = |vars: &[usize], tuple: &[usize]| vars.iter().fold(0, |acc, &v| acc * cards[v] + tuple[v]);
        let (na, nb) = (size(tx1), size(tx2));
        // A(.|x1) averaged over x2, B(.|x2) averaged over x1
        let mut a = vec![0.0; nx1 * na];
        let mut b = vec![0.0; nx2 * nb];
        let tuples: Vec<Vec<usize>> = (0..self.output_tuples()).map(|t| self.decode_tuple(t)).collect();
        for x1 in 0..nx1 {
            for x2 in 0..nx2 {
                for (t, &w) in self.row(x1, x2).iter().enumerate() {
                    a[x1 * na + index(tx1, &tuples[t])] += w / nx2 as f64;
                    b[x2 * nb + index(tx2, &tuples[t])] += w / nx1 as f64;
                }
            }
        }
        let mut dev: f64 = 0.0;
        for x1 in 0..nx1 {
            for x2 in 0..nx2 {
                for (t, &w) in self.row(x1, x2).iter().enumerate() {
                    let prod = a[x1 * na + index(tx1, &tuples[t])] * b[x2 * nb + index(tx2, &tuples[t])];
                    dev = dev.max((w - prod).abs());
                }
            }
        }
        dev
    }
}

fn output(name: &str, cardinality: usize) -> OutputVar {
    OutputVar { name: name.to_string(), cardinality }
}

/// Dense `P(y | x1, x2)` for one receiver, indexed `[(x1 * nx2 + x2) * ny + y]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReceiverLaw {
    pub nx1: usize,
    pub nx2: usize,
    pub ny: usize,
    pub p: Vec<f64>,
}

impl ReceiverLaw {
    #[inline]
    pub fn prob(&self, x1: usize, x2: usize, y: usize) -> f64 {
        self.p[(x1 * self.nx2 + x2) * self.ny + y]
    }

    #[inline]
    pub fn row(&self, x1: usize, x2: usize) -> &[f64] {
        let base = (x1 * self.nx2 + x2) * self.ny;
        &self.p[base..base + self.ny]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adder_mac_law() {
        let ch = ChannelModel::deterministic_mac(2, 2, 3, |a, b| a + b).unwrap();
        let law = ch.receiver_law(0).unwrap();
        assert_eq!(law.prob(1, 1, 2), 1.0);
        assert_eq!(law.prob(0, 1, 1), 1.0);
        assert!(ch.receiver_law(1).is_err());
    }

    #[test]
    fn rejects_unnormalized_rows() {
        let err = ChannelModel::mac(2, 2, 2, |_, _, _| 0.4).unwrap_err();
        assert!(matches!(err, Error::InvalidDistribution(_)));
    }

    #[test]
    fn product_channel_factorizes() {
        // Y1 depends on X1 only and Y2 on X2 only
        let bsc = |x: usize, y: usize| if x == y { 0.9 } else { 0.1 };
        let ch = ChannelModel::two_output(ChannelKind::Compound, [2, 2], [2, 2], |a, b, c, d| {
            bsc(a, c) * bsc(b, d)
        })
        .unwrap();
        assert!(ch.no_mai_deviation(&[0], &[1]) < 1e-12);
        let adder = ChannelModel::deterministic_mac(2, 2, 3, |a, b| a + b).unwrap();
        let dup = ChannelModel::duplicated(&adder, ChannelKind::Compound).unwrap();
        assert!(dup.no_mai_deviation(&[0], &[1]) > 0.1);
    }

    #[test]
    fn no_mai_declaration_is_validated() {
        let pipe = |x: usize, a: usize, b: usize| if x == a && x == b { 1.0 } else { 0.0 };
        let ch = ChannelModel::no_mai([2, 2], [2, 2], [2, 2], pipe, pipe).unwrap();
        assert_eq!(ch.receiver_alphabet(0), 4);
        let law = ch.receiver_law(1).unwrap();
        // receiver 2 sees (Y12, Y22) = (x1, x2)
        assert_eq!(law.prob(1, 0, 2), 1.0);

        let mixed = ChannelModel::new(
            ChannelKind::NoMai,
            [2, 2],
            ch.outputs().to_vec(),
            None,
            {
                let mut t = Vec::new();
                for a in 0..2 {
                    for b in 0..2 {
                        for idx in 0..16 {
                            // every output equals x1 xor x2
                            let bits = [(idx >> 3) & 1, (idx >> 2) & 1, (idx >> 1) & 1, idx & 1];
                            t.push(if bits.iter().all(|&v| v == a ^ b) { 1.0 } else { 0.0 });
                        }
                    }
                }
                t
            },
        );
        assert!(matches!(mixed, Err(Error::InvalidDistribution(_))));
    }
}
