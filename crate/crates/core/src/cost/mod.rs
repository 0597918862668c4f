//! Retrieval-time model: s-shape routing per aisle, level-dependent pick
//! times with lift operations, and the total over all bins.

mod eval;
mod params;
mod state;

pub use eval::{batch_time, batch_times, pick_time, route_time, total_time, BatchCost, CostError};
pub use params::{AisleMode, CostParams, ParamsError, PassMode};
pub use state::{CostState, StateError};
