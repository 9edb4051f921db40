//! Minimum source-channel rates over the binary adder MAC, with the
//! separation and cooperation baselines for comparison.

use jscc::catalog;
use jscc::criteria::{minrate_baseline, minrate_mac, Baseline, CriteriaOptions, MacTheorem, Verdict};

fn show(label: &str, v: &Verdict) {
    println!(
        "{label:<34} b_min = {:.6}  ({}, {})",
        v.b_min.unwrap_or(f64::NAN),
        v.mode,
        v.achievable
    );
}

fn main() -> jscc::Result<()> {
    let opts = CriteriaOptions::default();
    let adder = catalog::adder_mac();

    let v = minrate_mac(&catalog::cover_salehi_w1(), &adder, MacTheorem::Thm2, &opts)?;
    show("Cover-Salehi + W1, Markov side info", &v);
    let v = minrate_mac(&catalog::independent_bits(), &adder, MacTheorem::Thm3, &opts)?;
    show("independent bits", &v);
    let v = minrate_mac(&catalog::independent_xor(), &adder, MacTheorem::Thm3, &opts)?;
    show("independent bits, W1 = S1 xor S2", &v);

    let v = minrate_baseline(&catalog::cover_salehi(), &adder, Baseline::InfoSep, &opts)?;
    show("Cover-Salehi, separate codes", &v);
    let v = minrate_baseline(&catalog::independent_xor(), &adder, Baseline::FullCoop, &opts)?;
    show("xor model, full cooperation", &v);

    // the verdict at a given rate carries the margin to the region boundary
    let at = CriteriaOptions { b_query: Some(0.8), ..CriteriaOptions::default() };
    let v = minrate_mac(&catalog::independent_xor(), &adder, MacTheorem::Thm3, &at)?;
    println!("xor model at b = 0.8: {} with margin {:.6}", v.achievable, v.margin);
    Ok(())
}
