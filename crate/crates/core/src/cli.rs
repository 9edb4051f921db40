//! Command-line front end behind the `jscc` binary.
//!
//! Exit codes: 0 on success, 1 when a theorem's preconditions fail, 2 on
//! usage, parse or input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::criteria::{
    check_sufficient_b1, minrate_baseline, minrate_cmac, minrate_ic, minrate_mac, strong_interference_check,
    twoway_achievable, twoway_outer, CriteriaOptions, InterferenceReport, OuterBound, Theorem, Verdict, Witness,
};
use crate::model::Model;
use crate::prob::{gacs_korner_common, mutual_info, no_mai_check, structure_check, MiExpr, Pattern, ProductInput};
use crate::regions::{achievable_hull, HullOptions, RegionHull};
use crate::simulate::{self, Scheme, SimConfig, SimResult, TypicalityParams};
use crate::{ConditionedInput, Error, Result};

#[derive(Debug, Parser)]
#[command(name = "jscc", version, about = "Source-channel rate achievability for correlated sources over multiuser channels")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Model file (JSON).
    #[arg(long, global = true)]
    model: Option<PathBuf>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Grid resolution for region and input searches.
    #[arg(long, global = true)]
    grid: Option<f64>,
    /// Bisection tolerance on b.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Evaluate despite violated preconditions (reported as sufficient only).
    #[arg(long, global = true)]
    force: bool,
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Information measures of the model.
    #[command(subcommand)]
    Info(InfoCommand),
    /// Achievable mutual-information regions of the channel.
    #[command(subcommand)]
    Region(RegionCommand),
    /// Minimum source-channel rate under a theorem or baseline.
    Minrate(MinrateArgs),
    /// Evaluate a sufficient condition or structural property.
    Check(CheckArgs),
    /// Two-way channel bounds.
    #[command(subcommand)]
    Twoway(TwowayCommand),
    /// Monte Carlo simulation of a coding scheme.
    Simulate(SimulateArgs),
}

#[derive(Debug, Subcommand)]
enum InfoCommand {
    /// Entropy H(of | given).
    Entropy {
        #[arg(long, value_delimiter = ',', required = true)]
        of: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        given: Vec<String>,
    },
    /// Source-side I(a; b | given), or a channel quantity with --expr.
    Mi {
        #[arg(long, value_delimiter = ',')]
        a: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        b: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        given: Vec<String>,
        /// Channel quantity: x1, x2 or sum.
        #[arg(long)]
        expr: Option<String>,
        /// 1-based receiver for --expr.
        #[arg(long, default_value_t = 1)]
        receiver: usize,
        /// p(x1); uniform when absent.
        #[arg(long, value_delimiter = ',')]
        p1: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        p2: Vec<f64>,
    },
    /// Markov chain and independence checks, e.g. "markov(S1-W1-S2)".
    Structure {
        #[arg(long = "pattern")]
        patterns: Vec<String>,
        #[arg(long, default_value_t = 1e-9)]
        eps: f64,
        /// Also check that the channel has no multiple-access interference.
        #[arg(long)]
        no_mai: bool,
    },
    /// Gacs-Korner common part of two variables.
    CommonPart {
        #[arg(long, value_delimiter = ',', default_values_t = ["S1".to_string(), "S2".to_string()])]
        of: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
enum RegionCommand {
    /// Summary of the region hull; CSV of its points with --out.
    Hull(HullArgs),
    /// CSV of the region hull points.
    Dump(HullArgs),
}

#[derive(Debug, Args)]
struct HullArgs {
    /// Number of receivers to include (default: all).
    #[arg(long)]
    receivers: Option<usize>,
    /// Skip local refinement of the grid points.
    #[arg(long)]
    no_refine: bool,
}

#[derive(Debug, Args)]
struct MinrateArgs {
    #[arg(long)]
    theorem: String,
    /// Report the verdict at this rate instead of at b_min.
    #[arg(long)]
    b: Option<f64>,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long)]
    theorem: String,
    /// Rate for the strong-interference check.
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    /// Classical strong interference (no source terms).
    #[arg(long)]
    classical: bool,
    /// Evaluate two-way achievability at uncoded transmission (identity maps).
    #[arg(long)]
    uncoded: bool,
}

#[derive(Debug, Subcommand)]
enum TwowayCommand {
    /// Lower bound on achievable rates.
    Outer,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long)]
    scheme: String,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    #[arg(long, default_value_t = 0.3)]
    epsilon: f64,
    /// Channel-side typicality slack (default scales as 1/sqrt(m)).
    #[arg(long)]
    delta: Option<f64>,
    /// Source-side typicality slack (default scales as 1/sqrt(m)).
    #[arg(long)]
    gamma: Option<f64>,
    /// Bin rates R1,R2 for the separation scheme.
    #[arg(long, value_delimiter = ',')]
    rates: Vec<f64>,
    /// Uncoded symbol maps, e.g. "0,1:1,0".
    #[arg(long)]
    mapping: Option<String>,
    #[arg(long)]
    cap: Option<usize>,
    /// Emit the CSV row instead of text.
    #[arg(long)]
    csv: bool,
}

/// Runs the command line `args` (including the program name).
pub fn execute<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.common.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Error::InvalidArgument(e.to_string())),
        },
        None => dispatch(&cli),
    };
    let outcome = result.and_then(|text| emit(&cli.common, &text, out));
    match outcome {
        Ok(()) => 0,
        Err(Error::Precondition(report)) => {
            let _ = writeln!(err, "error: {}", Error::Precondition(report.clone()));
            for r in &report {
                let _ = writeln!(err, "  {}: {} (max deviation {:.6e})", r.name, verdict_word(r.holds), r.max_deviation);
            }
            let _ = writeln!(err, "rerun with --force to evaluate as a sufficient condition");
            1
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn emit(common: &Common, text: &str, out: &mut dyn Write) -> Result<()> {
    match &common.out {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn verdict_word(holds: bool) -> &'static str {
    if holds { "holds" } else { "violated" }
}

fn load(common: &Common) -> Result<Model> {
    let path = common.model.as_ref().ok_or_else(|| Error::InvalidArgument("--model PATH is required".into()))?;
    Model::load(path)
}

fn criteria_options(common: &Common) -> Result<CriteriaOptions> {
    let mut opts = CriteriaOptions::default();
    if let Some(g) = common.grid {
        if !(g > 0.0 && g <= 1.0) {
            return Err(Error::InvalidArgument(format!("--grid must lie in (0, 1], got {g}")));
        }
        opts.hull.resolution = g;
        opts.search.resolution = g;
    }
    if let Some(t) = common.tol {
        if !(t > 0.0) {
            return Err(Error::InvalidArgument(format!("--tol must be positive, got {t}")));
        }
        opts.tol = t;
    }
    if let Some(s) = common.seed {
        opts.hull.seed = s;
        opts.search.seed = s;
    }
    opts.force = common.force;
    Ok(opts)
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn f6(v: f64) -> String {
    format!("{v:.6}")
}

fn list(v: &[f64]) -> String {
    v.iter().map(|x| f6(*x)).collect::<Vec<_>>().join(", ")
}

fn names(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

fn dispatch(cli: &Cli) -> Result<String> {
    let common = &cli.common;
    match &cli.command {
        Command::Info(cmd) => info(common, cmd),
        Command::Region(cmd) => region(common, cmd),
        Command::Minrate(args) => minrate(common, args),
        Command::Check(args) => check(common, args),
        Command::Twoway(TwowayCommand::Outer) => {
            let model = load(common)?;
            let opts = criteria_options(common)?;
            let bound = twoway_outer(&model.joint, model.require_channel("twoway outer")?, &opts.search)?;
            if common.json {
                json(&bound)
            } else {
                Ok(outer_text(&bound, &model))
            }
        }
        Command::Simulate(args) => simulate_cmd(common, args),
    }
}

fn info(common: &Common, cmd: &InfoCommand) -> Result<String> {
    let model = load(common)?;
    let joint = &model.joint;
    match cmd {
        InfoCommand::Entropy { of, given } => {
            let h = joint.entropy_cond(&names(of), &names(given))?;
            let label = if given.is_empty() { format!("H({})", of.join(",")) } else { format!("H({}|{})", of.join(","), given.join(",")) };
            if common.json {
                json(&serde_json::json!({ "quantity": label, "value": h }))
            } else {
                Ok(format!("{label} = {}\n", f6(h)))
            }
        }
        InfoCommand::Mi { a, b, given, expr, receiver, p1, p2 } => {
            let (label, v) = match expr {
                Some(e) => {
                    let expr: MiExpr = e.parse()?;
                    let channel = model.require_channel("info mi --expr")?;
                    let [n1, n2] = channel.input_cards();
                    let p1 = if p1.is_empty() { vec![1.0 / n1 as f64; n1] } else { p1.clone() };
                    let p2 = if p2.is_empty() { vec![1.0 / n2 as f64; n2] } else { p2.clone() };
                    let input = ProductInput::single(p1, p2)?;
                    if *receiver == 0 {
                        return Err(Error::InvalidArgument("receivers are numbered from 1".into()));
                    }
                    (format!("{expr} at receiver {receiver}"), mutual_info(channel, &input, expr, receiver - 1)?)
                }
                None => {
                    if a.is_empty() || b.is_empty() {
                        return Err(Error::InvalidArgument("info mi needs --a and --b (or --expr)".into()));
                    }
                    let label = if given.is_empty() {
                        format!("I({};{})", a.join(","), b.join(","))
                    } else {
                        format!("I({};{}|{})", a.join(","), b.join(","), given.join(","))
                    };
                    (label, joint.mutual_info(&names(a), &names(b), &names(given))?)
                }
            };
            if common.json {
                json(&serde_json::json!({ "quantity": label, "value": v }))
            } else {
                Ok(format!("{label} = {}\n", f6(v)))
            }
        }
        InfoCommand::Structure { patterns, eps, no_mai } => {
            let mut results = Vec::new();
            for p in patterns {
                let pattern: Pattern = p.parse()?;
                let mut r = structure_check(joint, &pattern)?;
                r.holds = r.max_deviation <= *eps;
                results.push(r);
            }
            if *no_mai {
                results.push(no_mai_check(model.require_channel("the no-mai check")?));
            }
            if results.is_empty() {
                return Err(Error::InvalidArgument("give at least one --pattern or --no-mai".into()));
            }
            if common.json {
                json(&results)
            } else {
                let mut s = String::new();
                for r in &results {
                    let _ = writeln!(s, "{}: {} (max deviation {:.6e})", r.name, verdict_word(r.holds), r.max_deviation);
                }
                Ok(s)
            }
        }
        InfoCommand::CommonPart { of } => {
            if of.len() != 2 {
                return Err(Error::InvalidArgument("--of takes exactly two variables".into()));
            }
            let pair = joint.marginal(&names(of))?;
            let cp = gacs_korner_common(&pair)?;
            if common.json {
                json(&cp)
            } else {
                let idx = |m: &[usize]| m.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
                Ok(format!(
                    "|U| = {}\nH(U) = {}\nf({}) = [{}]\ng({}) = [{}]\n",
                    cp.u_cardinality,
                    f6(cp.u_entropy),
                    of[0],
                    idx(&cp.map1),
                    of[1],
                    idx(&cp.map2)
                ))
            }
        }
    }
}

fn region(common: &Common, cmd: &RegionCommand) -> Result<String> {
    let model = load(common)?;
    let channel = model.require_channel("region")?;
    let (args, dump) = match cmd {
        RegionCommand::Hull(a) => (a, false),
        RegionCommand::Dump(a) => (a, true),
    };
    let mut opts = HullOptions::default();
    if let Some(g) = common.grid {
        opts.resolution = g;
    }
    if let Some(s) = common.seed {
        opts.seed = s;
    }
    opts.refine = !args.no_refine;
    let receivers = args.receivers.unwrap_or(channel.receiver_count());
    let hull = achievable_hull(channel, receivers, &opts)?;
    let mut csv = Vec::new();
    hull.write_csv(&mut csv)?;
    let csv = String::from_utf8(csv).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    if dump {
        return Ok(csv);
    }
    // with --out the CSV goes to the file and the summary is dropped
    if common.out.is_some() {
        return Ok(csv);
    }
    if common.json {
        return json(&hull_summary(&hull));
    }
    let s = hull_summary(&hull);
    let mut t = format!(
        "receivers: {}\nresolution: {}\ngrid points evaluated: {}\nhull points: {}\n",
        s.receivers,
        f6(s.resolution),
        s.evaluated,
        s.points
    );
    let _ = writeln!(t, "max per coordinate: {}", list(&s.max));
    Ok(t)
}

#[derive(Serialize)]
struct HullSummary {
    receivers: usize,
    resolution: f64,
    evaluated: usize,
    points: usize,
    max: Vec<f64>,
}

fn hull_summary(h: &RegionHull) -> HullSummary {
    HullSummary {
        receivers: h.receivers.len(),
        resolution: h.resolution,
        evaluated: h.evaluated,
        points: h.len(),
        max: (0..h.dim()).map(|j| h.max_component(j)).collect(),
    }
}

fn minrate(common: &Common, args: &MinrateArgs) -> Result<String> {
    let model = load(common)?;
    let theorem: Theorem = args.theorem.parse()?;
    let channel = model.require_channel("minrate")?;
    let mut opts = criteria_options(common)?;
    opts.b_query = args.b;
    let verdict = match theorem {
        Theorem::Mac(t) => minrate_mac(&model.joint, channel, t, &opts),
        Theorem::Cmac(t) => minrate_cmac(&model.joint, channel, t, &opts),
        Theorem::Ic(t) => minrate_ic(&model.joint, channel, t, &opts),
        Theorem::Baseline(b) => minrate_baseline(&model.joint, channel, b, &opts),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "`{}` is a condition check; use `check --theorem {}`",
                args.theorem, args.theorem
            )))
        }
    };
    let reference = model.label_f64(&format!("reference_b_min_{}", args.theorem.to_ascii_lowercase()));
    match verdict {
        Ok(v) => report_verdict(common, &v, reference),
        Err(Error::Unachievable(msg)) => {
            if common.json {
                json(&serde_json::json!({ "theorem": args.theorem, "achievable": "no", "b_min": null, "reason": msg }))
            } else {
                Ok(format!("theorem: {}\nachievable: no\nb_min: none\nreason: {msg}\n", args.theorem))
            }
        }
        Err(e) => Err(e),
    }
}

#[derive(Serialize)]
struct VerdictReport<'a> {
    #[serde(flatten)]
    verdict: &'a Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    reference_b_min: Option<f64>,
}

fn report_verdict(common: &Common, v: &Verdict, reference: Option<f64>) -> Result<String> {
    if common.json {
        return json(&VerdictReport { verdict: v, reference_b_min: reference });
    }
    let mut s = String::new();
    let _ = writeln!(s, "theorem: {}", v.theorem);
    let _ = writeln!(s, "mode: {}", v.mode);
    let _ = writeln!(s, "achievable: {}", v.achievable);
    if let Some(b) = v.b_min {
        let _ = writeln!(s, "b_min: {}", f6(b));
    }
    if let Some(r) = reference {
        let _ = writeln!(s, "reference_b_min (published): {}", f6(r));
    }
    if let Some(b) = v.b_query {
        let _ = writeln!(s, "b_query: {}", f6(b));
    }
    let _ = writeln!(s, "margin: {}", f6(v.margin));
    if !v.entropy_vector.is_empty() {
        let _ = writeln!(s, "entropy_vector: {}", list(&v.entropy_vector));
    }
    if let Some(r) = &v.witness_rates {
        let _ = writeln!(s, "witness_rates: {}", list(r));
    }
    match &v.witness {
        Some(Witness::Product { input }) => {
            for (q, w) in input.q_weights.iter().enumerate() {
                let _ = writeln!(s, "witness q={q} weight {}: p(x1) = [{}], p(x2) = [{}]", f6(*w), list(&input.x1[q]), list(&input.x2[q]));
            }
        }
        Some(Witness::Conditioned { input }) => write_conditioned(&mut s, input),
        Some(Witness::Joint { pxx }) => {
            let _ = writeln!(s, "witness p(x1,x2) = [{}]", list(pxx));
        }
        None => {}
    }
    for p in &v.preconditions {
        let _ = writeln!(s, "precondition {}: {} (max deviation {:.6e})", p.name, verdict_word(p.holds), p.max_deviation);
    }
    if let Some(r) = &v.interference {
        interference_lines(&mut s, r);
    }
    for n in &v.notes {
        let _ = writeln!(s, "note: {n}");
    }
    Ok(s)
}

fn write_conditioned(s: &mut String, input: &ConditionedInput) {
    for (q, w) in input.q_weights.iter().enumerate() {
        let rows = |t: &Vec<Vec<f64>>| t.iter().map(|r| format!("[{}]", list(r))).collect::<Vec<_>>().join(" ");
        let _ = writeln!(s, "witness q={q} weight {}: p(x1|s1) = {}, p(x2|s2) = {}", f6(*w), rows(&input.x1[q]), rows(&input.x2[q]));
    }
}

fn interference_lines(s: &mut String, r: &InterferenceReport) {
    let _ = writeln!(
        s,
        "strong interference{} at b = {}: {} (worst violation {} on condition {}, violations [{}])",
        if r.classical { " (classical)" } else { "" },
        f6(r.b),
        verdict_word(r.holds),
        f6(r.worst_violation),
        r.worst_condition,
        list(&r.violations)
    );
}

fn check(common: &Common, args: &CheckArgs) -> Result<String> {
    let model = load(common)?;
    let theorem: Theorem = args.theorem.parse()?;
    let channel = model.require_channel("check")?;
    let opts = criteria_options(common)?;
    match theorem {
        Theorem::Sufficient(scenario) => report_verdict(common, &check_sufficient_b1(&model.joint, channel, scenario, &opts)?, None),
        Theorem::StrongInterference => {
            let r = strong_interference_check(&model.joint, channel, args.b, args.classical, &opts.search)?;
            if common.json {
                json(&r)
            } else {
                let mut s = String::new();
                interference_lines(&mut s, &r);
                let _ = writeln!(s, "grid steps: {}, evaluations: {}, restarts: {}, seed: {}", r.grid_steps, r.evaluated, r.restarts, r.seed);
                Ok(s)
            }
        }
        Theorem::TwowayAchievable => {
            let input = if args.uncoded {
                let ns = [model.joint.cardinality("S1")?, model.joint.cardinality("S2")?];
                let nx = channel.input_cards();
                let id = |n: usize| (0..n).collect::<Vec<_>>();
                Some(ConditionedInput::uncoded(&id(ns[0]), nx[0], &id(ns[1]), nx[1])?)
            } else {
                None
            };
            report_verdict(common, &twoway_achievable(&model.joint, channel, input.as_ref(), &opts)?, None)
        }
        _ => Err(Error::InvalidArgument(format!(
            "`{}` is a rate computation; use `minrate --theorem {}`",
            args.theorem, args.theorem
        ))),
    }
}

fn outer_text(b: &OuterBound, model: &Model) -> String {
    let mut s = format!(
        "b_lower: {}\nminimizing p(x1,x2) = [{}]\nratios: {}\nrates I(X1;Y2|X2), I(X2;Y1|X1): {}\nentropies H(S1|S2), H(S2|S1): {}\ngrid steps: {}, evaluations: {}\n",
        f6(b.b_lower),
        list(&b.pxx),
        list(&b.ratios),
        list(&b.rates),
        list(&b.entropies),
        b.grid_steps,
        b.evaluated
    );
    if let Some(r) = model.label_f64("reference_b_lower") {
        let _ = writeln!(s, "reference_b_lower (published): {}", f6(r));
    }
    s
}

fn parse_mapping(text: &str) -> Result<[Vec<usize>; 2]> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 2 {
        return Err(Error::InvalidArgument(format!("mapping `{text}` should look like 0,1:1,0")));
    }
    let parse = |p: &str| -> Result<Vec<usize>> {
        p.split(',')
            .map(|v| v.trim().parse::<usize>().map_err(|e| Error::InvalidArgument(format!("mapping `{text}`: {e}"))))
            .collect()
    };
    Ok([parse(parts[0])?, parse(parts[1])?])
}

fn simulate_cmd(common: &Common, args: &SimulateArgs) -> Result<String> {
    let scheme: Scheme = args.scheme.parse()?;
    let mut cfg = SimConfig::new(scheme, args.m, args.b);
    cfg.epsilon = args.epsilon;
    // validate before touching the model so bad parameters fail fast
    if args.m >= 1 {
        let d = TypicalityParams::for_block_length(args.m);
        cfg.typicality = TypicalityParams { delta: args.delta.unwrap_or(d.delta), gamma: args.gamma.unwrap_or(d.gamma) };
    }
    if let Some(t) = common.trials {
        cfg.trials = t;
    }
    if let Some(s) = common.seed {
        cfg.seed = s;
    }
    if let Some(c) = args.cap {
        cfg.codebook_cap = c;
    }
    match args.rates.as_slice() {
        [] => {}
        [r1, r2] => cfg.rates = Some([*r1, *r2]),
        other => return Err(Error::InvalidArgument(format!("--rates takes two values, got {}", other.len()))),
    }
    if let Some(m) = &args.mapping {
        cfg.mapping = Some(parse_mapping(m)?);
    }
    cfg.validate()?;
    let model = load(common)?;
    let channel = model.require_channel("simulate")?;
    let result = simulate::run(&model.joint, channel, &cfg)?;
    if args.csv {
        let mut buf = Vec::new();
        SimResult::write_csv(&[result], &mut buf)?;
        return String::from_utf8(buf).map_err(|e| Error::InvalidArgument(e.to_string()));
    }
    if common.json {
        return json(&result);
    }
    let mut s = format!(
        "scheme: {}\nm: {}\nn: {}\nb: {}\ntrials: {}\nseed: {}\ndelta: {}\ngamma: {}\n",
        result.scheme,
        result.m,
        result.n,
        f6(result.b),
        result.trials,
        result.seed,
        f6(result.typicality.delta),
        f6(result.typicality.gamma)
    );
    if let Some([a, b]) = result.codebook_sizes {
        let _ = writeln!(s, "codebook sizes: {a}, {b}");
    }
    for (k, e) in result.error_rate.iter().enumerate() {
        let _ = writeln!(s, "error rate rx{}: {}", k + 1, f6(*e));
    }
    if let Some(ser) = &result.symbol_error_rate {
        let _ = writeln!(s, "symbol error rate: {}", list(ser));
    }
    let ev = result.events;
    let _ = writeln!(s, "events: e1 {} e2 {} e3 {} e4 {}", ev.e1, ev.e2, ev.e3, ev.e4);
    if let Some(sep) = &result.separation {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
        let _ = writeln!(s, "channel decoding errors: {}", join(&sep.channel_errors));
        let _ = writeln!(s, "source decoding errors: {}", join(&sep.source_errors));
    }
    let _ = writeln!(s, "wall clock: {:.3} s", result.wall_clock.as_secs_f64());
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = execute(std::iter::once("jscc").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(&["frobnicate"]).0, 2);
        assert_eq!(run(&["minrate"]).0, 2);
        assert_eq!(run(&["--help"]).0, 0);
    }

    #[test]
    fn zero_block_length_is_rejected_before_loading() {
        let (code, _, err) = run(&["simulate", "--scheme", "matched", "--m", "0", "--model", "/nonexistent.json"]);
        assert_eq!(code, 2);
        assert!(err.contains("m must be ≥ 1"), "{err}");
    }

    #[test]
    fn mapping_parser() {
        assert_eq!(parse_mapping("0,1:1,0").unwrap(), [vec![0, 1], vec![1, 0]]);
        assert!(parse_mapping("0,1").is_err());
        assert!(parse_mapping("0,x:1").is_err());
    }
}
