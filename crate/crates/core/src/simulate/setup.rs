//! Shared trial machinery: source draws, codebooks and channel transmission.

use rand::RngCore;

use super::sampler::Sampler;
use super::typical::JointTable;
use crate::prob::ProductInput;
use crate::{ChannelModel, Error, JointPmf, Result};

pub(crate) const MAX_SYMBOL: usize = u8::MAX as usize;

/// Positions of `S1`, `S2` and the optional side information in the joint pmf.
pub(crate) struct Sources {
    pub cards: [usize; 2],
    /// `side[k]` is the variable index of `W{k+1}` if present.
    side: [Option<usize>; 2],
    idx: [usize; 2],
    sampler: Sampler,
    assignments: Vec<Vec<usize>>,
    joint: JointPmf,
}

impl Sources {
    pub fn new(joint: &JointPmf) -> Result<Self> {
        let idx = [joint.index_of("S1")?, joint.index_of("S2")?];
        let side = [
            joint.has("W1").then(|| joint.index_of("W1")).transpose()?,
            joint.has("W2").then(|| joint.index_of("W2")).transpose()?,
        ];
        if joint.cards().iter().any(|&c| c > MAX_SYMBOL) {
            return Err(Error::InvalidArgument(format!("alphabets above {MAX_SYMBOL} symbols are not simulated")));
        }
        let assignments = (0..joint.table().len()).map(|f| joint.assignment(f)).collect();
        Ok(Self {
            cards: [joint.cards()[idx[0]], joint.cards()[idx[1]]],
            side,
            idx,
            sampler: Sampler::new(joint.table()),
            assignments,
            joint: joint.clone(),
        })
    }

    /// Draws `m` i.i.d. tuples; returns `[S1, S2, W1, W2]` with empty side
    /// columns where absent.
    pub fn draw<R: RngCore>(&self, rng: &mut R, m: usize) -> [Vec<u8>; 4] {
        let mut out: [Vec<u8>; 4] = Default::default();
        for _ in 0..m {
            let a = &self.assignments[self.sampler.sample(rng)];
            out[0].push(a[self.idx[0]] as u8);
            out[1].push(a[self.idx[1]] as u8);
            for k in 0..2 {
                if let Some(i) = self.side[k] {
                    out[2 + k].push(a[i] as u8);
                }
            }
        }
        out
    }

    pub fn has_side(&self, receiver: usize) -> bool {
        self.side.get(receiver).copied().flatten().is_some()
    }

    pub fn marginal(&self, user: usize) -> Vec<f64> {
        self.joint.marginal_table(&[self.idx[user]])
    }

    /// Table over `(S1, S2[, Wk])`.
    pub fn pair_table(&self, receiver: usize) -> (Vec<usize>, JointTable) {
        self.table(&[Some(self.idx[0]), Some(self.idx[1]), self.side.get(receiver).copied().flatten()])
    }

    /// Table over `(S_user[, Wk])`.
    pub fn single_table(&self, user: usize, receiver: usize) -> (Vec<usize>, JointTable) {
        self.table(&[Some(self.idx[user]), self.side.get(receiver).copied().flatten()])
    }

    fn table(&self, vars: &[Option<usize>]) -> (Vec<usize>, JointTable) {
        let vars: Vec<usize> = vars.iter().flatten().copied().collect();
        let cards: Vec<usize> = vars.iter().map(|&v| self.joint.cards()[v]).collect();
        let pmf = self.joint.marginal_table(&vars);
        (cards.clone(), JointTable::new(&cards, pmf))
    }
}

/// Channel codeword distribution and output simulation.
pub(crate) struct Channel {
    pub input: ProductInput,
    q_sampler: Sampler,
    x_samplers: [Vec<Sampler>; 2],
    out_samplers: Vec<Sampler>,
    /// `symbols[k][tuple]` is receiver `k`'s observation.
    symbols: Vec<Vec<u8>>,
    nx2: usize,
    channel: ChannelModel,
}

impl Channel {
    pub fn new(channel: &ChannelModel, input: Option<&ProductInput>) -> Result<Self> {
        let [nx1, nx2] = channel.input_cards();
        let input = input.cloned().unwrap_or_else(|| ProductInput::uniform(nx1, nx2));
        input.validate(usize::MAX)?;
        input.check_dims(channel.input_cards())?;
        let receiver_cards: Vec<usize> = (0..channel.receiver_count()).map(|k| channel.receiver_alphabet(k)).collect();
        if nx1.max(nx2) > MAX_SYMBOL || receiver_cards.iter().any(|&c| c > MAX_SYMBOL) {
            return Err(Error::InvalidArgument(format!("alphabets above {MAX_SYMBOL} symbols are not simulated")));
        }
        let symbols = (0..channel.receiver_count())
            .map(|k| {
                (0..channel.output_tuples())
                    .map(|t| channel.receiver_symbol(k, &channel.decode_tuple(t)) as u8)
                    .collect()
            })
            .collect();
        let mut out_samplers = Vec::with_capacity(nx1 * nx2);
        for x1 in 0..nx1 {
            for x2 in 0..nx2 {
                out_samplers.push(Sampler::new(channel.row(x1, x2)));
            }
        }
        Ok(Self {
            q_sampler: Sampler::new(&input.q_weights),
            x_samplers: [
                input.x1.iter().map(|r| Sampler::new(r)).collect(),
                input.x2.iter().map(|r| Sampler::new(r)).collect(),
            ],
            input,
            out_samplers,
            symbols,
            nx2,
            channel: channel.clone(),
        })
    }

    pub fn draw_q<R: RngCore>(&self, rng: &mut R, n: usize) -> Vec<u8> {
        (0..n).map(|_| self.q_sampler.sample(rng) as u8).collect()
    }

    /// `count` codewords of user `user` stored row-major.
    pub fn codebook<R: RngCore>(&self, rng: &mut R, user: usize, q: &[u8], count: usize) -> Vec<u8> {
        let mut out = Vec::with_capacity(count * q.len());
        for _ in 0..count {
            for &qt in q {
                out.push(self.x_samplers[user][qt as usize].sample(rng) as u8);
            }
        }
        out
    }

    /// Outputs seen by every receiver.
    pub fn transmit<R: RngCore>(&self, rng: &mut R, x1: &[u8], x2: &[u8]) -> Vec<Vec<u8>> {
        let mut out = vec![Vec::with_capacity(x1.len()); self.symbols.len()];
        for (&a, &b) in x1.iter().zip(x2) {
            let t = self.out_samplers[a as usize * self.nx2 + b as usize].sample(rng);
            for (o, s) in out.iter_mut().zip(&self.symbols) {
                o.push(s[t]);
            }
        }
        out
    }

    /// Tables over `(Q, X1, X2, Yk)`, `(Q, X1, Yk)` and `(Q, X2, Yk)`.
    pub fn tables(&self, receiver: usize) -> Result<[JointTable; 3]> {
        let law = self.channel.receiver_law(receiver)?;
        let (nq, nx1, nx2, ny) = (self.input.q_len(), law.nx1, law.nx2, law.ny);
        let mut full = vec![0.0; nq * nx1 * nx2 * ny];
        let mut t1 = vec![0.0; nq * nx1 * ny];
        let mut t2 = vec![0.0; nq * nx2 * ny];
        for q in 0..nq {
            for a in 0..nx1 {
                for b in 0..nx2 {
                    for y in 0..ny {
                        let p = self.input.q_weights[q] * self.input.x1[q][a] * self.input.x2[q][b] * law.prob(a, b, y);
                        full[((q * nx1 + a) * nx2 + b) * ny + y] = p;
                        t1[(q * nx1 + a) * ny + y] += p;
                        t2[(q * nx2 + b) * ny + y] += p;
                    }
                }
            }
        }
        Ok([
            JointTable::new(&[nq, nx1, nx2, ny], full),
            JointTable::new(&[nq, nx1, ny], t1),
            JointTable::new(&[nq, nx2, ny], t2),
        ])
    }
}

/// `ceil(2^{exponent})` checked against `cap`.
pub(crate) fn capped_size(exponent: f64, cap: usize, what: &str) -> Result<usize> {
    let size = exponent.exp2().ceil();
    if !size.is_finite() || size > cap as f64 {
        return Err(Error::CapExceeded {
            what: what.to_string(),
            count: if size.is_finite() { size as u128 } else { u128::MAX },
            cap: cap as u128,
        });
    }
    Ok((size as usize).max(1))
}

pub(crate) fn row(book: &[u8], len: usize, i: usize) -> &[u8] {
    &book[i * len..(i + 1) * len]
}
