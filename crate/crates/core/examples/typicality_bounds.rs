//! Exact sizes of strongly typical sets and the chance that independent
//! sequences look jointly typical.

use jscc::simulate::{joint_typicality_probability, typical_set_size_check};

fn main() -> jscc::Result<()> {
    for (pmf, n, delta) in [(vec![0.5, 0.5], 16, 0.2), (vec![0.9, 0.1], 20, 0.15)] {
        let c = typical_set_size_check(&pmf, n, delta)?;
        println!(
            "{pmf:?}, n = {n}: |T| = {}, (1/n) log|T| = {:.4}, H = {:.4}, bound {:.4}, holds {}",
            c.size, c.lhs, c.entropy, c.bound, c.holds
        );
    }

    // X uniform, Y = X through a BSC(0.1)
    let pxy = [0.45, 0.05, 0.05, 0.45];
    let j = joint_typicality_probability(&pxy, 2, 14, 0.1, 100_000, 7)?;
    println!(
        "independent pairs jointly typical: empirical {:.2e}, exact {:.2e}, bound {:.2e}",
        j.empirical, j.exact, j.bound
    );
    Ok(())
}
