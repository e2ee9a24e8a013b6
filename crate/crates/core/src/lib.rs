//! Conjugate-piggybacking MDS array codes over GF(2^m).
//!
//! A stripe holds `k` data nodes and `r` parity nodes, each storing `r`
//! symbols. Parity is produced in three stages: a systematic base code,
//! piggybacks of grouped data added above the parity diagonal, and a pairwise
//! conjugate transform across the diagonal. Any `r` node erasures can be
//! decoded, and a single failed node is rebuilt from a fraction of the stripe.

pub mod analysis;
pub mod code;
pub mod decode;
pub mod error;
pub mod format;
pub mod galois;
pub mod repair;
pub mod sim;

pub use analysis::{exact_profile, optimal_l, BandwidthProfile, Rational};
pub use code::{encode, CodeParams, CodeShape, CodedStripe, DataMatrix, Stage};
pub use decode::{
    decode_generic, decode_structured, verify_mds, DecodeOptions, ErasurePattern, MdsReport, Shares,
};
pub use error::{Error, Result};
pub use galois::{FieldElement, FieldMatrix, GaloisField};
pub use repair::{predicted_bandwidth, repair_node, Download, RepairReport};
pub use sim::{simulate, SimConfig, SimMode, SimRow};
