//! Rate-one sufficient conditions with correlation-preserving inputs.

use jscc::catalog;
use jscc::criteria::{check_sufficient_b1, evaluate_b1_conditions, CriteriaOptions, Scenario};
use jscc::ConditionedInput;

fn main() -> jscc::Result<()> {
    let cs = catalog::cover_salehi();
    let adder = catalog::adder_mac();

    // uncoded transmission sends the pair over the adder without loss
    let uncoded = ConditionedInput::uncoded(&[0, 1], 2, &[0, 1], 2)?;
    for c in evaluate_b1_conditions(&cs, &adder, &[0], &uncoded)? {
        println!("{:<28} {:.6} < {:.6}  slack {:+.6}", c.name, c.lhs, c.rhs, c.slack());
    }

    let v = check_sufficient_b1(&cs, &adder, Scenario::MacThm1, &CriteriaOptions::default())?;
    println!("searched witness: {} (margin {:.6})", v.achievable, v.margin);
    Ok(())
}
