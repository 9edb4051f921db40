//! Strong typicality tests and exhaustive checks of the typical-set bounds.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::sampler::Sampler;
use crate::prob::entropy_bits;
use crate::{Error, Result};

/// Largest `|X|^n` accepted by [`typical_set_size_check`].
pub const ENUMERATION_CAP: u128 = 1 << 24;

/// `|N(a|x^n)/n - P(a)| <= delta` for all `a`, and no symbol of zero
/// probability occurs.
pub fn is_strongly_typical(seq: &[usize], pmf: &[f64], delta: f64) -> bool {
    let mut counts = vec![0u32; pmf.len()];
    for &s in seq {
        counts[s] += 1;
    }
    counts_typical(&counts, pmf, seq.len(), delta)
}

pub(crate) fn counts_typical<C: Copy + Into<f64>>(counts: &[C], pmf: &[f64], n: usize, delta: f64) -> bool {
    let n = n as f64;
    counts.iter().zip(pmf).all(|(&c, &p)| {
        let c: f64 = c.into();
        if p <= 0.0 {
            c == 0.0
        } else {
            (c / n - p).abs() <= delta + 1e-12
        }
    })
}

/// Joint strong typicality of several aligned sequences against a joint pmf
/// over their product alphabet (row-major, last sequence fastest).
pub fn is_jointly_typical(seqs: &[&[usize]], cards: &[usize], pmf: &[f64], delta: f64) -> bool {
    let n = seqs.first().map_or(0, |s| s.len());
    let combined: Vec<usize> = (0..n)
        .map(|t| seqs.iter().zip(cards).fold(0, |acc, (s, &c)| acc * c + s[t]))
        .collect();
    is_strongly_typical(&combined, pmf, delta)
}

/// Conditional strong typicality of `y` given `x` for the channel `P(y|x)`
/// (`pyx[x * ny + y]`): `|N(a,b)/n - N(a)/n P(b|a)| <= delta` with zero counts
/// where `P(b|a) = 0`.
pub fn is_conditionally_typical(x: &[usize], y: &[usize], pyx: &[f64], ny: usize, delta: f64) -> bool {
    let nx = pyx.len() / ny;
    let mut joint = vec![0usize; nx * ny];
    let mut marg = vec![0usize; nx];
    for (&a, &b) in x.iter().zip(y) {
        joint[a * ny + b] += 1;
        marg[a] += 1;
    }
    let n = x.len() as f64;
    (0..nx).all(|a| {
        (0..ny).all(|b| {
            let p = pyx[a * ny + b];
            let c = joint[a * ny + b] as f64;
            if p <= 0.0 {
                c == 0.0
            } else {
                (c / n - marg[a] as f64 / n * p).abs() <= delta + 1e-12
            }
        })
    })
}

/// Counts of joint symbols used by the decoders; `columns` are aligned byte
/// sequences and `strides` their row-major weights.
pub(crate) struct JointTable {
    pub pmf: Vec<f64>,
    pub strides: Vec<usize>,
}

impl JointTable {
    pub fn new(cards: &[usize], pmf: Vec<f64>) -> Self {
        let mut strides = vec![1; cards.len()];
        for i in (0..cards.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * cards[i + 1];
        }
        Self { pmf, strides }
    }

    pub fn typical(&self, columns: &[&[u8]], delta: f64, scratch: &mut Vec<u32>) -> bool {
        scratch.clear();
        scratch.resize(self.pmf.len(), 0);
        let n = columns[0].len();
        for t in 0..n {
            let mut idx = 0;
            for (c, &s) in columns.iter().zip(&self.strides) {
                idx += c[t] as usize * s;
            }
            if self.pmf[idx] <= 0.0 {
                return false;
            }
            scratch[idx] += 1;
        }
        counts_typical(scratch, &self.pmf, n, delta)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TypicalSetCheck {
    pub n: usize,
    pub delta: f64,
    pub size: f64,
    /// `(1/n) log2 |T|`.
    pub lhs: f64,
    pub entropy: f64,
    /// `delta / |X|`.
    pub bound: f64,
    /// `|lhs - H| <= bound`; informational, the bound is asymptotic.
    pub holds: bool,
}

fn log2_multinomial(counts: &[usize]) -> f64 {
    fn lfact(k: usize) -> f64 {
        (1..=k).map(|i| (i as f64).log2()).sum()
    }
    lfact(counts.iter().sum()) - counts.iter().map(|&c| lfact(c)).sum::<f64>()
}

/// Calls `f` on every composition of `n` into `parts` nonnegative counts.
pub(crate) fn for_each_type(parts: usize, n: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(k: &mut Vec<usize>, i: usize, left: usize, f: &mut dyn FnMut(&[usize])) {
        if i + 1 == k.len() {
            k[i] = left;
            f(k);
            return;
        }
        for v in 0..=left {
            k[i] = v;
            rec(k, i + 1, left - v, f);
        }
    }
    if parts == 0 {
        return;
    }
    rec(&mut vec![0; parts], 0, n, f);
}

/// Size of the strongly typical set, counted exactly by summing the sizes of
/// the typical type classes.
pub fn typical_set_size_check(pmf: &[f64], n: usize, delta: f64) -> Result<TypicalSetCheck> {
    crate::prob::JointPmf::new(vec!["X"], vec![pmf.len()], pmf.to_vec())?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let space = (pmf.len() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if space > ENUMERATION_CAP {
        return Err(Error::CapExceeded { what: "sequence space |X|^n".into(), count: space, cap: ENUMERATION_CAP });
    }
    let mut size = 0.0;
    for_each_type(pmf.len(), n, &mut |k| {
        if counts_typical(&k.iter().map(|&c| c as f64).collect::<Vec<_>>(), pmf, n, delta) {
            size += log2_multinomial(k).exp2();
        }
    });
    let entropy = entropy_bits(pmf);
    let lhs = if size > 0.0 { size.log2() / n as f64 } else { f64::NEG_INFINITY };
    let bound = delta / pmf.len() as f64;
    Ok(TypicalSetCheck { n, delta, size: size.round(), lhs, entropy, bound, holds: (lhs - entropy).abs() <= bound })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JointTypicalityCheck {
    pub n: usize,
    pub delta: f64,
    pub samples: usize,
    /// Fraction of independently drawn pairs that were jointly typical.
    pub empirical: f64,
    /// The same probability computed exactly over joint types.
    pub exact: f64,
    /// `2^{-n (I(X;Y) - 3 delta)}`.
    pub bound: f64,
    pub mutual_information: f64,
}

/// Draws `x^n ~ P_X`, `y^n ~ P_Y` independently and records how often the
/// pair is jointly typical for `P_XY` (`pxy[x * ny + y]`).
pub fn joint_typicality_probability(
    pxy: &[f64],
    ny: usize,
    n: usize,
    delta: f64,
    samples: usize,
    seed: u64,
) -> Result<JointTypicalityCheck> {
    let nx = pxy.len() / ny;
    crate::prob::JointPmf::new(vec!["X", "Y"], vec![nx, ny], pxy.to_vec())?;
    let px: Vec<f64> = (0..nx).map(|a| (0..ny).map(|b| pxy[a * ny + b]).sum()).collect();
    let py: Vec<f64> = (0..ny).map(|b| (0..nx).map(|a| pxy[a * ny + b]).sum()).collect();
    let mi = entropy_bits(&px) + entropy_bits(&py) - entropy_bits(pxy);
    let (sx, sy) = (Sampler::new(&px), Sampler::new(&py));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0usize;
    let mut counts = vec![0u32; nx * ny];
    for _ in 0..samples {
        counts.iter_mut().for_each(|c| *c = 0);
        for _ in 0..n {
            let (a, b) = (sx.sample(&mut rng), sy.sample(&mut rng));
            counts[a * ny + b] += 1;
        }
        if counts_typical(&counts, pxy, n, delta) {
            hits += 1;
        }
    }
    // exact: sum over joint types of multinomial(n; k) prod (px py)^k
    let prod: Vec<f64> = (0..nx * ny).map(|i| px[i / ny] * py[i % ny]).collect();
    let mut exact = 0.0;
    for_each_type(nx * ny, n, &mut |k| {
        if counts_typical(&k.iter().map(|&c| c as f64).collect::<Vec<_>>(), pxy, n, delta) {
            let lp: f64 = k.iter().zip(&prod).map(|(&c, &p)| if c == 0 { 0.0 } else { c as f64 * p.log2() }).sum();
            exact += (log2_multinomial(k) + lp).exp2();
        }
    });
    Ok(JointTypicalityCheck {
        n,
        delta,
        samples,
        empirical: hits as f64 / samples as f64,
        exact,
        bound: (-(n as f64) * (mi - 3.0 * delta)).exp2(),
        mutual_information: mi,
    })
}
