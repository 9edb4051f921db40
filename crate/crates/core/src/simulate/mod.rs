//! Monte Carlo runs of the random-coding schemes at desk-scale block lengths.
//!
//! Every trial draws its randomness from `ChaCha8Rng::seed_from_u64(seed)`
//! on stream `trial`, so trials run in parallel and results do not depend on
//! scheduling.

mod matched;
mod sampler;
mod separation;
mod setup;
mod typical;
mod uncoded;

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Duration;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use matched::run_matched_scheme;
pub use separation::run_separation_scheme;
pub use typical::{
    is_conditionally_typical, is_jointly_typical, is_strongly_typical, joint_typicality_probability,
    typical_set_size_check, JointTypicalityCheck, TypicalSetCheck, ENUMERATION_CAP,
};
pub use uncoded::run_uncoded;

use crate::prob::ProductInput;
use crate::{ChannelModel, Error, JointPmf, Result};

/// Default cap on codebook and bin counts.
pub const DEFAULT_CODEBOOK_CAP: usize = 1 << 16;

/// Strong typicality slacks: `delta` on the channel side, `gamma` on the source side.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TypicalityParams {
    pub delta: f64,
    pub gamma: f64,
}

impl TypicalityParams {
    /// Heuristic slack `c / sqrt(m)` calibrated on the adder examples
    /// (`0.25` at `m = 12`).
    pub fn for_block_length(m: usize) -> Self {
        let v = (0.25 * (12.0 / m.max(1) as f64).sqrt()).min(0.9);
        Self { delta: v, gamma: v }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("delta", self.delta), ("gamma", self.gamma)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::InvalidArgument(format!("{name} must lie in (0, 1), got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    Matched,
    Separation,
    Uncoded,
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Matched => "matched",
            Scheme::Separation => "separation",
            Scheme::Uncoded => "uncoded",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "matched" => Ok(Scheme::Matched),
            "separation" => Ok(Scheme::Separation),
            "uncoded" => Ok(Scheme::Uncoded),
            other => Err(Error::InvalidArgument(format!("unknown scheme `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub scheme: Scheme,
    /// Source block length.
    pub m: usize,
    /// Channel uses per source symbol; `n = round(b m)`.
    pub b: f64,
    /// Codebook exponent slack of the matched scheme.
    pub epsilon: f64,
    pub typicality: TypicalityParams,
    pub trials: usize,
    pub seed: u64,
    /// Bin rates `(R1, R2)` in bits per source symbol (separation scheme).
    pub rates: Option<[f64; 2]>,
    pub codebook_cap: usize,
    /// Codeword distribution; uniform when absent.
    pub input: Option<ProductInput>,
    /// Per-user symbol maps `S_k -> X_k` (uncoded scheme); identity when absent.
    pub mapping: Option<[Vec<usize>; 2]>,
}

impl SimConfig {
    pub fn new(scheme: Scheme, m: usize, b: f64) -> Self {
        Self {
            scheme,
            m,
            b,
            epsilon: 0.3,
            typicality: TypicalityParams::for_block_length(m),
            trials: 200,
            seed: 0,
            rates: None,
            codebook_cap: DEFAULT_CODEBOOK_CAP,
            input: None,
            mapping: None,
        }
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_rates(mut self, r1: f64, r2: f64) -> Self {
        self.rates = Some([r1, r2]);
        self
    }

    /// Channel block length.
    pub fn n(&self) -> usize {
        (self.b * self.m as f64).round().max(0.0) as usize
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 1 {
            return Err(Error::InvalidArgument("m must be ≥ 1".into()));
        }
        if self.trials < 1 {
            return Err(Error::InvalidArgument("trials must be ≥ 1".into()));
        }
        if !(self.b.is_finite() && self.b > 0.0) || self.n() < 1 {
            return Err(Error::InvalidArgument(format!(
                "n = round(b m) must be ≥ 1 (b = {}, m = {})",
                self.b, self.m
            )));
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(Error::InvalidArgument("epsilon must be positive".into()));
        }
        self.typicality.validate()
    }

    pub(crate) fn trial_rng(&self, trial: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial as u64);
        rng
    }
}

/// Trial counts of the decoding error events. `e1` is global; `e2`..`e4`
/// count trials in which the event occurred at some receiver.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventCounts {
    /// No source codeword matched.
    pub e1: u64,
    /// The true source tuple was not typical.
    pub e2: u64,
    /// The true channel tuple was not typical.
    pub e3: u64,
    /// Some other index pair passed both tests.
    pub e4: u64,
}

impl EventCounts {
    fn add(&mut self, o: &EventCounts) {
        self.e1 += o.e1;
        self.e2 += o.e2;
        self.e3 += o.e3;
        self.e4 += o.e4;
    }

    pub fn total(&self) -> u64 {
        self.e1 + self.e2 + self.e3 + self.e4
    }
}

/// Error components of the separation scheme, per receiver.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationBreakdown {
    /// Trials where the channel decoder missed the transmitted bin pair.
    pub channel_errors: Vec<u64>,
    /// Trials where source decoding from the true bin pair failed.
    pub source_errors: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub scheme: Scheme,
    pub m: usize,
    pub n: usize,
    pub b: f64,
    pub trials: usize,
    pub seed: u64,
    pub typicality: TypicalityParams,
    pub epsilon: f64,
    /// Block error rate per receiver.
    pub error_rate: Vec<f64>,
    pub block_errors: Vec<u64>,
    /// Trials with an error at any receiver.
    pub any_errors: u64,
    /// For the separation scheme `e2` and `e3` hold the source- and
    /// channel-decoding components summed over receivers.
    pub events: EventCounts,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub codebook_sizes: Option<[u64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separation: Option<SeparationBreakdown>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symbol_error_rate: Option<Vec<f64>>,
    #[serde(skip)]
    pub wall_clock: Duration,
}

impl SimResult {
    pub const CSV_HEADER: [&'static str; 12] =
        ["scheme", "m", "n", "b", "trials", "seed", "error_rate_rx1", "error_rate_rx2", "e1", "e2", "e3", "e4"];

    pub fn csv_row(&self) -> Vec<String> {
        let rate = |k: usize| self.error_rate.get(k).map(|v| format!("{v:.6}")).unwrap_or_default();
        vec![
            self.scheme.to_string(),
            self.m.to_string(),
            self.n.to_string(),
            format!("{:.6}", self.b),
            self.trials.to_string(),
            self.seed.to_string(),
            rate(0),
            rate(1),
            self.events.e1.to_string(),
            self.events.e2.to_string(),
            self.events.e3.to_string(),
            self.events.e4.to_string(),
        ]
    }

    pub fn write_csv<W: Write>(results: &[SimResult], out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(Self::CSV_HEADER)?;
        for r in results {
            w.write_record(r.csv_row())?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn mean_error(&self) -> f64 {
        self.error_rate.iter().sum::<f64>() / self.error_rate.len().max(1) as f64
    }
}

/// Per-trial outcome merged by count addition.
#[derive(Clone, Debug, Default)]
pub(crate) struct Tally {
    pub block_errors: Vec<u64>,
    pub symbol_errors: Vec<u64>,
    pub any_errors: u64,
    pub events: EventCounts,
    pub channel_errors: Vec<u64>,
    pub source_errors: Vec<u64>,
}

impl Tally {
    pub fn new(receivers: usize) -> Self {
        Self {
            block_errors: vec![0; receivers],
            symbol_errors: vec![0; receivers],
            channel_errors: vec![0; receivers],
            source_errors: vec![0; receivers],
            ..Default::default()
        }
    }

    pub fn merge(mut self, o: Tally) -> Tally {
        let add = |a: &mut Vec<u64>, b: &[u64]| a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        add(&mut self.block_errors, &o.block_errors);
        add(&mut self.symbol_errors, &o.symbol_errors);
        add(&mut self.channel_errors, &o.channel_errors);
        add(&mut self.source_errors, &o.source_errors);
        self.any_errors += o.any_errors;
        self.events.add(&o.events);
        self
    }

    pub fn into_result(self, cfg: &SimConfig, wall_clock: Duration) -> SimResult {
        let t = cfg.trials as f64;
        SimResult {
            scheme: cfg.scheme,
            m: cfg.m,
            n: cfg.n(),
            b: cfg.b,
            trials: cfg.trials,
            seed: cfg.seed,
            typicality: cfg.typicality,
            epsilon: cfg.epsilon,
            error_rate: self.block_errors.iter().map(|&e| e as f64 / t).collect(),
            block_errors: self.block_errors,
            any_errors: self.any_errors,
            events: self.events,
            codebook_sizes: None,
            separation: None,
            symbol_error_rate: None,
            wall_clock,
        }
    }
}

/// Dispatches on `cfg.scheme`.
pub fn run(joint: &JointPmf, channel: &ChannelModel, cfg: &SimConfig) -> Result<SimResult> {
    match cfg.scheme {
        Scheme::Matched => run_matched_scheme(joint, channel, cfg),
        Scheme::Separation => run_separation_scheme(joint, channel, cfg),
        Scheme::Uncoded => run_uncoded(joint, channel, cfg.mapping.as_ref(), cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn matched(m: usize, b: f64, trials: usize, seed: u64) -> SimConfig {
        SimConfig::new(Scheme::Matched, m, b).with_trials(trials).with_seed(seed)
    }

    #[test]
    fn rejects_zero_block_length() {
        let err = run(&catalog::independent_xor(), &catalog::adder_mac(), &matched(0, 1.0, 1, 0)).unwrap_err();
        assert!(err.to_string().contains("m must be ≥ 1"));
        let err = run(&catalog::independent_xor(), &catalog::adder_mac(), &matched(4, 0.1, 1, 0)).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)));
    }

    #[test]
    fn codebook_cap_is_enforced() {
        let mut cfg = matched(12, 1.0, 1, 0);
        cfg.codebook_cap = 1 << 10;
        assert!(matches!(
            run(&catalog::independent_xor(), &catalog::adder_mac(), &cfg),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn matched_is_deterministic() {
        let cfg = matched(8, 1.0, 20, 7);
        let a = run(&catalog::independent_xor(), &catalog::adder_mac(), &cfg).unwrap();
        let b = run(&catalog::independent_xor(), &catalog::adder_mac(), &cfg).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        let c = run(&catalog::independent_xor(), &catalog::adder_mac(), &cfg.clone().with_seed(8)).unwrap();
        assert_ne!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&c).unwrap());
    }

    #[test]
    fn events_cover_errors() {
        let r = run(&catalog::independent_xor(), &catalog::adder_mac(), &matched(8, 0.6, 40, 1)).unwrap();
        assert!(r.events.total() >= r.any_errors);
        assert_eq!(r.error_rate[0], r.block_errors[0] as f64 / 40.0);
    }

    #[test]
    fn constant_sources_over_clean_pipes() {
        let r = run(&catalog::constant_source(), &catalog::clean_pipes(), &matched(10, 4.0, 50, 3)).unwrap();
        assert_eq!(r.error_rate, vec![0.0, 0.0]);
    }

    #[test]
    fn separation_deterministic_source() {
        let cfg = SimConfig::new(Scheme::Separation, 8, 4.0).with_trials(30).with_rates(0.25, 0.25);
        let r = run(&catalog::constant_source(), &catalog::adder_mac(), &cfg).unwrap();
        assert_eq!(r.error_rate, vec![0.0]);
        let sep = r.separation.unwrap();
        assert_eq!(sep.source_errors, vec![0]);
    }

    #[test]
    fn separation_needs_rates() {
        let cfg = SimConfig::new(Scheme::Separation, 8, 1.0);
        assert!(run(&catalog::cover_salehi_w1(), &catalog::adder_mac(), &cfg).is_err());
    }

    #[test]
    fn uncoded_cover_salehi_is_exact() {
        let cfg = SimConfig::new(Scheme::Uncoded, 16, 1.0).with_trials(100);
        let r = run(&catalog::cover_salehi(), &catalog::adder_mac(), &cfg).unwrap();
        assert_eq!(r.error_rate, vec![0.0]);
        assert_eq!(r.symbol_error_rate, Some(vec![0.0]));
    }

    #[test]
    fn uncoded_shannon_two_way_is_exact() {
        let cfg = SimConfig::new(Scheme::Uncoded, 16, 1.0).with_trials(100);
        let r = run(&catalog::shannon_source(), &catalog::multiplier_two_way(), &cfg).unwrap();
        assert_eq!(r.error_rate, vec![0.0, 0.0]);
    }

    #[test]
    fn uncoded_independent_bits_err() {
        // the adder confuses (0,1) with (1,0)
        let cfg = SimConfig::new(Scheme::Uncoded, 8, 1.0).with_trials(200);
        let r = run(&catalog::independent_bits(), &catalog::adder_mac(), &cfg).unwrap();
        let ser = r.symbol_error_rate.unwrap()[0];
        assert!((ser - 0.25).abs() < 0.05, "{ser}");
    }

    #[test]
    fn uncoded_checks_mapping() {
        let mut cfg = SimConfig::new(Scheme::Uncoded, 8, 1.0);
        cfg.mapping = Some([vec![0, 2], vec![0, 1]]);
        assert!(matches!(
            run(&catalog::cover_salehi(), &catalog::adder_mac(), &cfg),
            Err(Error::DimensionMismatch(_))
        ));
        cfg.mapping = None;
        cfg.b = 2.0;
        assert!(run(&catalog::cover_salehi(), &catalog::adder_mac(), &cfg).is_err());
    }

    #[test]
    fn csv_row_layout() {
        let r = run(&catalog::cover_salehi(), &catalog::adder_mac(), &SimConfig::new(Scheme::Uncoded, 4, 1.0).with_trials(3))
            .unwrap();
        let mut buf = Vec::new();
        SimResult::write_csv(&[r], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "scheme,m,n,b,trials,seed,error_rate_rx1,error_rate_rx2,e1,e2,e3,e4");
        assert_eq!(lines[1], "uncoded,4,4,1.000000,3,0,0.000000,,0,0,0,0");
    }

    #[test]
    fn wall_clock_not_serialized() {
        let r = run(&catalog::cover_salehi(), &catalog::adder_mac(), &SimConfig::new(Scheme::Uncoded, 4, 1.0).with_trials(3))
            .unwrap();
        assert!(!serde_json::to_string(&r).unwrap().contains("wall"));
    }
}
