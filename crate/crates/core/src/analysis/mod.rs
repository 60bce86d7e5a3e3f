//! Demonstration experiments and statistics.

mod stats;
mod sweep;
mod transfer;
mod transition;
pub mod tsv;

pub use stats::{rank_sum_test, EXACT_LIMIT};
pub use sweep::{corruption_sweep, sweep_distances, SweepConfig, SweepRow};
pub use transfer::{transfer_config, transfer_experiment, DecoderDump, SpeedupRecord, Stage, TransferOutcome, DUMP_INPUTS};
pub use transition::{build_transition_matrix, StructureDemo, TransitionMatrix, MAX_TRANSITION_BITS};
