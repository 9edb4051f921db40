//! Joint source-channel random coding: source codebooks matched one-to-one
//! to channel codebooks, decoded by simultaneous typicality.

use std::collections::HashMap;
use std::time::Instant;

use rayon::prelude::*;

use super::sampler::Sampler;
use super::setup::{capped_size, row, Channel, Sources};
use super::typical::JointTable;
use super::{Scheme, SimConfig, SimResult, Tally};
use crate::{ChannelKind, ChannelModel, Error, JointPmf, Result};

/// Above this many candidate sequences per user-1 codeword the decoder scans
/// the user-2 list instead of enumerating compatible sequences.
const ENUMERATION_LIMIT: usize = 256;

struct Receiver {
    pair: JointTable,
    single: [JointTable; 2],
    channel: [JointTable; 3],
    /// `allowed[s1 * nw + w]` lists the `s2` with `p(s1, s2, w) > 0`.
    allowed: Vec<Vec<u8>>,
    nw: usize,
    side: bool,
}

impl Receiver {
    fn new(sources: &Sources, channel: &Channel, k: usize) -> Result<Self> {
        let (cards, pair) = sources.pair_table(k);
        let (ns1, ns2) = (cards[0], cards[1]);
        let nw = cards.get(2).copied().unwrap_or(1);
        let mut allowed = vec![Vec::new(); ns1 * nw];
        for s1 in 0..ns1 {
            for w in 0..nw {
                for s2 in 0..ns2 {
                    if pair.pmf[(s1 * ns2 + s2) * nw + w] > 0.0 {
                        allowed[s1 * nw + w].push(s2 as u8);
                    }
                }
            }
        }
        Ok(Self {
            pair,
            single: [sources.single_table(0, k).1, sources.single_table(1, k).1],
            channel: channel.tables(k)?,
            allowed,
            nw,
            side: sources.has_side(k),
        })
    }
}

struct Books<'a> {
    src: [&'a [u8]; 2],
    x: [&'a [u8]; 2],
    sizes: [usize; 2],
    m: usize,
    n: usize,
}

/// Outcome flags at one receiver: (E2, E3, E4).
fn decode(
    rx: &Receiver,
    cfg: &SimConfig,
    books: &Books<'_>,
    w: &[u8],
    q: &[u8],
    y: &[u8],
    truth: [usize; 2],
    ns: [usize; 2],
    nx: [usize; 2],
) -> (bool, bool, bool) {
    let (gamma, delta) = (cfg.typicality.gamma, cfg.typicality.delta);
    let (m, n) = (books.m, books.n);
    let mut scratch = Vec::new();
    let src = |u: usize, j: usize| row(books.src[u], m, j);
    let xw = |u: usize, j: usize| row(books.x[u], n, j);

    let source_ok = |a: &[u8], b: &[u8], scratch: &mut Vec<u32>| {
        if rx.side {
            rx.pair.typical(&[a, b, w], gamma, scratch)
        } else {
            rx.pair.typical(&[a, b], gamma, scratch)
        }
    };
    let channel_ok =
        |a: &[u8], b: &[u8], scratch: &mut Vec<u32>| rx.channel[0].typical(&[q, a, b, y], delta, scratch);

    let e2 = !source_ok(src(0, truth[0]), src(1, truth[1]), &mut scratch);
    let e3 = !channel_ok(xw(0, truth[0]), xw(1, truth[1]), &mut scratch);

    // marginal consequences of the two joint tests
    let lists: Vec<Vec<u32>> = (0..2)
        .map(|u| {
            let other = 1 - u;
            (0..books.sizes[u])
                .filter(|&j| {
                    let s = src(u, j);
                    let s_ok = if rx.side {
                        rx.single[u].typical(&[s, w], gamma * ns[other] as f64, &mut scratch)
                    } else {
                        rx.single[u].typical(&[s], gamma * ns[other] as f64, &mut scratch)
                    };
                    s_ok && rx.channel[1 + u].typical(&[q, xw(u, j), y], delta * nx[other] as f64, &mut scratch)
                })
                .map(|j| j as u32)
                .collect()
        })
        .collect();
    if lists[0].is_empty() || lists[1].is_empty() {
        return (e2, e3, false);
    }

    let mut by_seq: HashMap<&[u8], Vec<u32>> = HashMap::new();
    for &j2 in &lists[1] {
        by_seq.entry(src(1, j2 as usize)).or_default().push(j2);
    }
    let mut wrong = false;
    let try_pair = |j1: usize, j2: usize, scratch: &mut Vec<u32>| -> bool {
        if [j1, j2] == truth {
            return false;
        }
        source_ok(src(0, j1), src(1, j2), scratch) && channel_ok(xw(0, j1), xw(1, j2), scratch)
    };
    let mut cand = vec![0u8; m];
    'outer: for &j1 in &lists[0] {
        let j1 = j1 as usize;
        let s1 = src(0, j1);
        let options: Vec<&[u8]> = (0..m)
            .map(|t| {
                let wt = if rx.side { w[t] as usize } else { 0 };
                rx.allowed[s1[t] as usize * rx.nw + wt].as_slice()
            })
            .collect();
        let mut count: usize = 1;
        for o in &options {
            count = count.saturating_mul(o.len());
        }
        if count == 0 {
            continue;
        }
        if count <= ENUMERATION_LIMIT {
            let mut digit = vec![0usize; m];
            loop {
                for t in 0..m {
                    cand[t] = options[t][digit[t]];
                }
                if let Some(js) = by_seq.get(cand.as_slice()) {
                    for &j2 in js {
                        if try_pair(j1, j2 as usize, &mut scratch) {
                            wrong = true;
                            break 'outer;
                        }
                    }
                }
                let mut t = 0;
                while t < m {
                    digit[t] += 1;
                    if digit[t] < options[t].len() {
                        break;
                    }
                    digit[t] = 0;
                    t += 1;
                }
                if t == m {
                    break;
                }
            }
        } else {
            for &j2 in &lists[1] {
                if try_pair(j1, j2 as usize, &mut scratch) {
                    wrong = true;
                    break 'outer;
                }
            }
        }
    }
    (e2, e3, wrong)
}

/// Runs the matched scheme: codebook sizes `ceil(2^{m (H(S_k) + eps/2)})`,
/// smallest-index encoding and unique-pair typicality decoding at every
/// receiver of `channel`.
pub fn run_matched_scheme(joint: &JointPmf, channel: &ChannelModel, cfg: &SimConfig) -> Result<SimResult> {
    cfg.validate()?;
    if cfg.scheme != Scheme::Matched {
        return Err(Error::InvalidArgument(format!("configuration is for the {} scheme", cfg.scheme)));
    }
    if channel.kind() == ChannelKind::TwoWay {
        return Err(Error::UnsupportedChannel { kind: channel.kind().to_string(), operation: "the matched scheme".into() });
    }
    let start = Instant::now();
    let sources = Sources::new(joint)?;
    let ch = Channel::new(channel, cfg.input.as_ref())?;
    let (m, n) = (cfg.m, cfg.n());
    let marg = [sources.marginal(0), sources.marginal(1)];
    let mut sizes = [0usize; 2];
    for u in 0..2 {
        let h = crate::prob::entropy_bits(&marg[u]);
        sizes[u] = capped_size(m as f64 * (h + cfg.epsilon / 2.0), cfg.codebook_cap, &format!("codebook M{}", u + 1))?;
    }
    let samplers = [Sampler::new(&marg[0]), Sampler::new(&marg[1])];
    let receivers: Vec<Receiver> =
        (0..channel.receiver_count()).map(|k| Receiver::new(&sources, &ch, k)).collect::<Result<_>>()?;
    let [nx1, nx2] = channel.input_cards();
    let nr = receivers.len();

    let tally = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = cfg.trial_rng(trial);
            let mut t = Tally::new(nr);
            let s = sources.draw(&mut rng, m);
            let q = ch.draw_q(&mut rng, n);
            let src: Vec<Vec<u8>> = (0..2)
                .map(|u| (0..sizes[u] * m).map(|_| samplers[u].sample(&mut rng) as u8).collect())
                .collect();
            let x = [ch.codebook(&mut rng, 0, &q, sizes[0]), ch.codebook(&mut rng, 1, &q, sizes[1])];
            let index = |u: usize| (0..sizes[u]).find(|&i| row(&src[u], m, i) == s[u].as_slice());
            let (Some(i1), Some(i2)) = (index(0), index(1)) else {
                t.events.e1 = 1;
                t.any_errors = 1;
                t.block_errors.iter_mut().for_each(|e| *e = 1);
                return t;
            };
            let y = ch.transmit(&mut rng, row(&x[0], n, i1), row(&x[1], n, i2));
            let books = Books { src: [&src[0], &src[1]], x: [&x[0], &x[1]], sizes, m, n };
            let mut flags = [false; 3];
            for (k, rx) in receivers.iter().enumerate() {
                let (e2, e3, e4) =
                    decode(rx, cfg, &books, &s[2 + k], &q, &y[k], [i1, i2], sources.cards, [nx1, nx2]);
                if e2 || e3 || e4 {
                    t.block_errors[k] = 1;
                }
                flags[0] |= e2;
                flags[1] |= e3;
                flags[2] |= e4;
            }
            t.events.e2 = flags[0] as u64;
            t.events.e3 = flags[1] as u64;
            t.events.e4 = flags[2] as u64;
            t.any_errors = t.block_errors.iter().any(|&e| e > 0) as u64;
            t
        })
        .reduce(|| Tally::new(nr), Tally::merge);
    let mut result = tally.into_result(cfg, start.elapsed());
    result.codebook_sizes = Some([sizes[0] as u64, sizes[1] as u64]);
    Ok(result)
}
