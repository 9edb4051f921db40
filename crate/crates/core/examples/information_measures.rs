//! Entropies, mutual information, Markov checks and the common part of a
//! source pair.

use jscc::catalog;
use jscc::prob::{gacs_korner_common, structure_check, Pattern};

fn main() -> jscc::Result<()> {
    let cs = catalog::cover_salehi_w1();
    println!("H(S1,S2)   = {:.6}", cs.entropy(&["S1", "S2"])?);
    println!("H(S1|W1)   = {:.6}", cs.entropy_cond(&["S1"], &["W1"])?);
    println!("I(S1;S2)   = {:.6}", cs.mutual_info(&["S1"], &["S2"], &[])?);
    println!("I(S1;S2|W1) = {:.6}", cs.mutual_info(&["S1"], &["S2"], &["W1"])?);

    let markov: Pattern = "markov(S1-W1-S2)".parse()?;
    let r = structure_check(&cs, &markov)?;
    println!("{}: holds = {}, deviation {:.2e}", r.name, r.holds, r.max_deviation);

    // two blocks of symbols that never mix share one common bit
    let blocks = jscc::JointPmf::new(
        vec!["S1", "S2"],
        vec![4, 4],
        vec![
            0.1, 0.15, 0.0, 0.0, //
            0.1, 0.15, 0.0, 0.0, //
            0.0, 0.0, 0.2, 0.05, //
            0.0, 0.0, 0.05, 0.2,
        ],
    )?;
    let cp = gacs_korner_common(&blocks)?;
    println!("common part: |U| = {}, H(U) = {:.6}, f = {:?}, g = {:?}", cp.u_cardinality, cp.u_entropy, cp.map1, cp.map2);
    Ok(())
}
