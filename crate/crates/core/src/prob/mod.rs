//! Finite-alphabet probability and information measures.

mod channel;
mod common;
mod input;
mod measures;
mod pmf;
mod structure;

pub use channel::{ChannelKind, ChannelModel, OutputVar, ReceiverLaw};
pub use common::{gacs_korner_common, CommonPart};
pub use input::{ConditionedInput, ProductInput, DEFAULT_MAX_Q};
pub use measures::{entropy_bits, joint_input_rates, mutual_info, product_rates, MiExpr};
pub use pmf::JointPmf;
pub use structure::{no_mai_check, structure_check, Pattern, StructureResult};

/// Tolerance used when checking that tables sum to one.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Cells below this value count as exact zeros for support computations.
pub const SUPPORT_EPS: f64 = 1e-15;

/// Conventional variable names.
pub const S1: &str = "S1";
pub const S2: &str = "S2";
pub const W1: &str = "W1";
pub const W2: &str = "W2";

pub(crate) fn check_probability_vector(row: &[f64], what: &str) -> crate::Result<()> {
    if row.is_empty() {
        return Err(crate::Error::InvalidDistribution(format!("{what} is empty")));
    }
    if let Some(v) = row.iter().find(|v| !v.is_finite() || **v < 0.0) {
        return Err(crate::Error::InvalidDistribution(format!(
            "{what} has invalid entry {v}"
        )));
    }
    let sum: f64 = row.iter().sum();
    if (sum - 1.0).abs() > NORMALIZATION_TOL {
        return Err(crate::Error::InvalidDistribution(format!(
            "{what} sums to {sum}"
        )));
    }
    Ok(())
}
