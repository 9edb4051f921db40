//! Achievable rate region of a MAC and of a compound MAC, written as CSV.

use jscc::catalog;
use jscc::regions::{achievable_hull, HullOptions};

fn main() -> jscc::Result<()> {
    let opts = HullOptions::with_resolution(0.05);
    let mac = achievable_hull(&catalog::adder_mac(), 1, &opts)?;
    println!("adder MAC: {} hull points from {} grid inputs", mac.len(), mac.evaluated);
    for j in 0..mac.dim() {
        println!("  max of coordinate {j}: {:.6}", mac.max_component(j));
    }

    let both = achievable_hull(&catalog::noisy_direct_adder_ic(0.1), 2, &opts)?;
    println!("two receivers: {} hull points in dimension {}", both.len(), both.dim());

    mac.write_csv(std::io::stdout().lock())?;
    Ok(())
}
