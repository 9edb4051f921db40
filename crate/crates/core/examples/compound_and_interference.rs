//! Compound MAC and interference channel rates, including the strong
//! source-channel interference test.

use jscc::catalog;
use jscc::criteria::{minrate_cmac, minrate_ic, strong_interference_check, CmacTheorem, CriteriaOptions, IcTheorem};
use jscc::ChannelKind;

fn main() -> jscc::Result<()> {
    let opts = CriteriaOptions::default();

    let both_adders = catalog::duplicated(&catalog::adder_mac(), ChannelKind::Compound);
    let v = minrate_cmac(&catalog::cover_salehi_w1(), &both_adders, CmacTheorem::Thm5, &opts)?;
    println!("two adder receivers, W1 only:   b_min = {:.6} ({})", v.b_min.unwrap(), v.mode);

    let v = minrate_cmac(&catalog::cover_salehi(), &catalog::clean_pipes(), CmacTheorem::Thm7, &opts)?;
    println!("noiseless pipes, no MAI:        b_min = {:.6} ({})", v.b_min.unwrap(), v.mode);

    let ic = catalog::noisy_direct_adder_ic(0.1);
    let src = catalog::ic_source(0.05, 0.5);
    let v = minrate_ic(&src, &ic, IcTheorem::Thm9, &opts)?;
    println!("interference channel:           b_min = {:.6} ({})", v.b_min.unwrap(), v.mode);
    if let Some(r) = &v.interference {
        println!("  strong interference holds: {} (worst violation {:.2e})", r.holds, r.worst_violation);
    }

    let crossed = catalog::noisy_cross_adder_ic(0.1);
    let r = strong_interference_check(&src, &crossed, 1.0, false, &opts.search)?;
    println!("noisy cross link: holds = {}, violations {:?}", r.holds, r.violations);
    Ok(())
}
