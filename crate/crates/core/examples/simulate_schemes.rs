//! Monte Carlo runs of the joint, separated and uncoded schemes.

use jscc::catalog;
use jscc::simulate::{run, Scheme, SimConfig, SimResult};

fn main() -> jscc::Result<()> {
    let adder = catalog::adder_mac();
    let xor = catalog::independent_xor();
    let mut rows: Vec<SimResult> = Vec::new();

    for b in [0.6, 1.0] {
        let cfg = SimConfig::new(Scheme::Matched, 10, b).with_trials(100).with_seed(1);
        rows.push(run(&xor, &adder, &cfg)?);
    }

    let csw = catalog::cover_salehi_w1();
    for r in [0.3, 0.7] {
        let cfg = SimConfig::new(Scheme::Separation, 10, 1.2).with_trials(100).with_seed(1).with_rates(r, r);
        rows.push(run(&csw, &adder, &cfg)?);
    }

    let cfg = SimConfig::new(Scheme::Uncoded, 10, 1.0).with_trials(100);
    rows.push(run(&catalog::cover_salehi(), &adder, &cfg)?);

    SimResult::write_csv(&rows, std::io::stdout().lock())?;
    Ok(())
}
