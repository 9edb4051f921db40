//! Symbol-by-symbol transmission with MAP decoding.

use std::time::Instant;

use rayon::prelude::*;

use super::setup::{Channel, Sources};
use super::{Scheme, SimConfig, SimResult, Tally};
use crate::{ChannelKind, ChannelModel, Error, JointPmf, Result};

/// Per-receiver MAP table from `(y, side)` to the decoded `(s1, s2)`.
struct MapRule {
    table: Vec<(u8, u8)>,
    side_len: usize,
    /// Side observation: 0 none, 1 `S1`, 2 `S2`, 3 `Wk`.
    side: u8,
}

impl MapRule {
    fn key(&self, y: u8, t: usize, s: &[Vec<u8>; 4], k: usize) -> usize {
        let side = match self.side {
            0 => 0,
            1 => s[0][t],
            2 => s[1][t],
            _ => s[2 + k][t],
        };
        y as usize * self.side_len + side as usize
    }
}

fn check_map(map: &[usize], ns: usize, nx: usize, user: usize) -> Result<()> {
    if map.len() != ns || map.iter().any(|&x| x >= nx) {
        return Err(Error::DimensionMismatch(format!(
            "symbol map for user {} must send {ns} source symbols into {nx} inputs, got {map:?}",
            user + 1
        )));
    }
    Ok(())
}

/// Uncoded transmission `X_k = map_k(S_k)` at `b = 1`. Each receiver applies
/// the exact MAP rule given its output and side information; on a two-way
/// channel user `k` decodes the other source from `Yk` and its own source.
pub fn run_uncoded(
    joint: &JointPmf,
    channel: &ChannelModel,
    mapping: Option<&[Vec<usize>; 2]>,
    cfg: &SimConfig,
) -> Result<SimResult> {
    cfg.validate()?;
    if cfg.scheme != Scheme::Uncoded {
        return Err(Error::InvalidArgument(format!("configuration is for the {} scheme", cfg.scheme)));
    }
    if cfg.n() != cfg.m {
        return Err(Error::InvalidArgument(format!("uncoded transmission needs b = 1, got b = {}", cfg.b)));
    }
    let start = Instant::now();
    let sources = Sources::new(joint)?;
    let ch = Channel::new(channel, None)?;
    let ns = sources.cards;
    let nx = channel.input_cards();
    let maps: [Vec<usize>; 2] = match mapping {
        Some(m) => m.clone(),
        None => [(0..ns[0]).collect(), (0..ns[1]).collect()],
    };
    for u in 0..2 {
        check_map(&maps[u], ns[u], nx[u], u)?;
    }
    let two_way = channel.kind() == ChannelKind::TwoWay;
    let rules: Vec<MapRule> = (0..channel.receiver_count())
        .map(|k| {
            let law = channel.receiver_law(k)?;
            let (side, cards, pmf) = if two_way {
                let (_, t) = sources.pair_table(usize::MAX);
                (1 + k as u8, ns[k], t.pmf)
            } else if sources.has_side(k) {
                let (c, t) = sources.pair_table(k);
                (3, c[2], t.pmf)
            } else {
                let (_, t) = sources.pair_table(usize::MAX);
                (0, 1, t.pmf)
            };
            let nw = if side == 3 { cards } else { 1 };
            let mut table = vec![(0u8, 0u8); law.ny * cards];
            for y in 0..law.ny {
                for v in 0..cards {
                    let mut best = (-1.0, (0u8, 0u8));
                    for s1 in 0..ns[0] {
                        for s2 in 0..ns[1] {
                            let consistent = match side {
                                1 => s1 == v,
                                2 => s2 == v,
                                _ => true,
                            };
                            if !consistent {
                                continue;
                            }
                            let w = if side == 3 { v } else { 0 };
                            let p = pmf[(s1 * ns[1] + s2) * nw + w] * law.prob(maps[0][s1], maps[1][s2], y);
                            if p > best.0 {
                                best = (p, (s1 as u8, s2 as u8));
                            }
                        }
                    }
                    table[y * cards + v] = best.1;
                }
            }
            Ok(MapRule { table, side_len: cards, side })
        })
        .collect::<Result<_>>()?;
    let nr = rules.len();
    let m = cfg.m;

    let tally = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = cfg.trial_rng(trial);
            let mut t = Tally::new(nr);
            let s = sources.draw(&mut rng, m);
            let x1: Vec<u8> = s[0].iter().map(|&v| maps[0][v as usize] as u8).collect();
            let x2: Vec<u8> = s[1].iter().map(|&v| maps[1][v as usize] as u8).collect();
            let y = ch.transmit(&mut rng, &x1, &x2);
            for (k, rule) in rules.iter().enumerate() {
                let wrong = (0..m).filter(|&i| rule.table[rule.key(y[k][i], i, &s, k)] != (s[0][i], s[1][i])).count();
                t.symbol_errors[k] = wrong as u64;
                t.block_errors[k] = (wrong > 0) as u64;
            }
            t.any_errors = t.block_errors.iter().any(|&e| e > 0) as u64;
            t
        })
        .reduce(|| Tally::new(nr), Tally::merge);
    let symbols = tally.symbol_errors.iter().map(|&e| e as f64 / (cfg.trials * m) as f64).collect();
    let mut result = tally.into_result(cfg, start.elapsed());
    result.symbol_error_rate = Some(symbols);
    Ok(result)
}
