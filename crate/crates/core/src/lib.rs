//! Achievability of source-channel rates for lossless transmission of
//! correlated sources over discrete memoryless multiuser channels.
//!
//! The crate is organised bottom-up:
//!
//! * [`prob`] holds finite joint distributions, channel laws, input
//!   distributions and the exact information measures built on them.
//! * [`regions`] enumerates achievable mutual-information regions over
//!   product inputs with time sharing and finds the smallest scaling `b`
//!   that covers an entropy requirement.
//! * [`criteria`] turns per-setting conditions (MAC, compound MAC,
//!   interference and two-way channels) into [`criteria::Verdict`]s.
//! * [`simulate`] runs Monte Carlo versions of the random-coding schemes at
//!   small block lengths.
//! * [`model`] and [`cli`] provide the JSON model format and the command
//!   line front end used by the `jscc` binary.
//!
//! All information quantities are in bits.

pub mod capacity;
pub mod catalog;
pub mod cli;
pub mod criteria;
pub mod error;
pub mod lp;
pub mod model;
pub mod optimize;
pub mod prob;
pub mod regions;
pub mod simulate;

pub use error::{Error, Result};
pub use prob::{ChannelKind, ChannelModel, CommonPart, ConditionedInput, JointPmf, ProductInput};
