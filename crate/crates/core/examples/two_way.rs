//! Shannon's binary multiplier channel used in both directions.

use jscc::catalog;
use jscc::criteria::{twoway_achievable, twoway_outer, CriteriaOptions};
use jscc::ConditionedInput;

fn main() -> jscc::Result<()> {
    let src = catalog::shannon_source();
    let ch = catalog::multiplier_two_way();
    let opts = CriteriaOptions::default();

    let outer = twoway_outer(&src, &ch, &opts.search)?;
    println!("no rate below b = {:.6} works", outer.b_lower);
    println!("  minimizing p(x1,x2) = {:.4?}", outer.pxx);

    let uncoded = ConditionedInput::uncoded(&[0, 1], 2, &[0, 1], 2)?;
    let v = twoway_achievable(&src, &ch, Some(&uncoded), &opts)?;
    println!("uncoded at b = 1: {} (margin {:.2e})", v.achievable, v.margin);
    Ok(())
}
