//! Slepian-Wolf binning followed by independent multiple-access codebooks,
//! with separate channel and source decoders.

use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use super::setup::{capped_size, row, Channel, Sources};
use super::typical::JointTable;
use super::{Scheme, SeparationBreakdown, SimConfig, SimResult, Tally, ENUMERATION_CAP};
use crate::{ChannelKind, ChannelModel, Error, JointPmf, Result};

struct Receiver {
    single: [JointTable; 2],
    channel: [JointTable; 3],
    side: bool,
}

fn digits(mut index: usize, base: usize, out: &mut [u8]) {
    for d in out.iter_mut().rev() {
        *d = (index % base) as u8;
        index /= base;
    }
}

fn seq_index(seq: &[u8], base: usize) -> usize {
    seq.iter().fold(0, |acc, &s| acc * base + s as usize)
}

/// Runs the separation scheme with bin rates `cfg.rates` (bits per source
/// symbol) at every receiver of `channel`.
///
/// Each source is decoded on its own from its bin and the receiver's side
/// information, as suits sources that are conditionally independent given it.
pub fn run_separation_scheme(joint: &JointPmf, channel: &ChannelModel, cfg: &SimConfig) -> Result<SimResult> {
    cfg.validate()?;
    if cfg.scheme != Scheme::Separation {
        return Err(Error::InvalidArgument(format!("configuration is for the {} scheme", cfg.scheme)));
    }
    if channel.kind() == ChannelKind::TwoWay {
        return Err(Error::UnsupportedChannel { kind: channel.kind().to_string(), operation: "the separation scheme".into() });
    }
    let rates = cfg
        .rates
        .ok_or_else(|| Error::InvalidArgument("the separation scheme needs bin rates (R1, R2)".into()))?;
    if rates.iter().any(|r| !(r.is_finite() && *r >= 0.0)) {
        return Err(Error::InvalidArgument(format!("bin rates must be nonnegative, got {rates:?}")));
    }
    let start = Instant::now();
    let sources = Sources::new(joint)?;
    let ch = Channel::new(channel, cfg.input.as_ref())?;
    let (m, n) = (cfg.m, cfg.n());
    let ns = sources.cards;
    let mut bins = [0usize; 2];
    let mut space = [0usize; 2];
    for u in 0..2 {
        bins[u] = capped_size(m as f64 * rates[u], cfg.codebook_cap, &format!("bin count B{}", u + 1))?;
        let s = (ns[u] as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
        if s > ENUMERATION_CAP {
            return Err(Error::CapExceeded { what: format!("source sequence space |S{}|^m", u + 1), count: s, cap: ENUMERATION_CAP });
        }
        space[u] = s as usize;
    }
    let receivers: Vec<Receiver> = (0..channel.receiver_count())
        .map(|k| {
            Ok(Receiver {
                single: [sources.single_table(0, k).1, sources.single_table(1, k).1],
                channel: ch.tables(k)?,
                side: sources.has_side(k),
            })
        })
        .collect::<Result<_>>()?;
    let [nx1, nx2] = channel.input_cards();
    let nx = [nx1, nx2];
    let nr = receivers.len();
    let (gamma, delta) = (cfg.typicality.gamma, cfg.typicality.delta);

    let tally = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = cfg.trial_rng(trial);
            let mut t = Tally::new(nr);
            let s = sources.draw(&mut rng, m);
            let q = ch.draw_q(&mut rng, n);
            let bin_of: Vec<Vec<u32>> =
                (0..2).map(|u| (0..space[u]).map(|_| rng.gen_range(0..bins[u]) as u32).collect()).collect();
            let x = [ch.codebook(&mut rng, 0, &q, bins[0]), ch.codebook(&mut rng, 1, &q, bins[1])];
            let sent = [bin_of[0][seq_index(&s[0], ns[0])] as usize, bin_of[1][seq_index(&s[1], ns[1])] as usize];
            let y = ch.transmit(&mut rng, row(&x[0], n, sent[0]), row(&x[1], n, sent[1]));

            // members of every bin, in sequence order
            let members: Vec<Vec<Vec<u32>>> = (0..2)
                .map(|u| {
                    let mut lists = vec![Vec::new(); bins[u]];
                    for (seq, &b) in bin_of[u].iter().enumerate() {
                        lists[b as usize].push(seq as u32);
                    }
                    lists
                })
                .collect();

            let mut scratch = Vec::new();
            let mut buf = vec![0u8; m];
            let mut any_source = false;
            let mut any_channel = false;
            for (k, rx) in receivers.iter().enumerate() {
                let w = &s[2 + k];
                let yk = &y[k];
                // channel decoder
                let lists: Vec<Vec<usize>> = (0..2)
                    .map(|u| {
                        (0..bins[u])
                            .filter(|&j| {
                                rx.channel[1 + u].typical(&[&q, row(&x[u], n, j), yk], delta * nx[1 - u] as f64, &mut scratch)
                            })
                            .collect()
                    })
                    .collect();
                let mut found: Vec<[usize; 2]> = Vec::new();
                'scan: for &j1 in &lists[0] {
                    for &j2 in &lists[1] {
                        if rx.channel[0].typical(&[&q, row(&x[0], n, j1), row(&x[1], n, j2), yk], delta, &mut scratch) {
                            found.push([j1, j2]);
                            if found.len() > 1 {
                                break 'scan;
                            }
                        }
                    }
                }
                let decoded = (found.len() == 1).then(|| found[0]);
                let channel_error = decoded != Some(sent);

                // source decoder, fed with the true bins to isolate its error
                let mut source_error = false;
                for u in 0..2 {
                    let mut hit = None;
                    let mut unique = true;
                    for &seq in &members[u][sent[u]] {
                        digits(seq as usize, ns[u], &mut buf);
                        let ok = if rx.side {
                            rx.single[u].typical(&[&buf, w], gamma, &mut scratch)
                        } else {
                            rx.single[u].typical(&[&buf], gamma, &mut scratch)
                        };
                        if ok {
                            if hit.is_some() {
                                unique = false;
                                break;
                            }
                            hit = Some(seq as usize);
                        }
                    }
                    if !(unique && hit == Some(seq_index(&s[u], ns[u]))) {
                        source_error = true;
                    }
                }
                t.channel_errors[k] = channel_error as u64;
                t.source_errors[k] = source_error as u64;
                t.block_errors[k] = (channel_error || source_error) as u64;
                any_source |= source_error;
                any_channel |= channel_error;
            }
            t.events.e2 = any_source as u64;
            t.events.e3 = any_channel as u64;
            t.any_errors = t.block_errors.iter().any(|&e| e > 0) as u64;
            t
        })
        .reduce(|| Tally::new(nr), Tally::merge);
    let breakdown =
        SeparationBreakdown { channel_errors: tally.channel_errors.clone(), source_errors: tally.source_errors.clone() };
    let mut result = tally.into_result(cfg, start.elapsed());
    result.codebook_sizes = Some([bins[0] as u64, bins[1] as u64]);
    result.separation = Some(breakdown);
    Ok(result)
}
