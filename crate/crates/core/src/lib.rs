//! Storage location assignment for multi-level, picker-to-parts warehouses
//! with pre-batched orders.
//!
//! Items live in containers of four size classes. Each bin (batch) is picked
//! in s-shape sweeps through the aisles, the lower levels first and each upper
//! level after a lift operation. [`cost`] turns an [`model::Assignment`] into
//! a total retrieval time; [`annealer`] minimizes it by simulated annealing
//! with class-preserving container swaps and whole-cell swaps; [`baselines`]
//! gives random and frequency-ordered reference assignments; [`analysis`]
//! exports plot-ready data.

pub mod analysis;
pub mod annealer;
pub mod baselines;
pub mod cli;
pub mod cost;
pub mod model;
pub mod orders;
pub mod rng;
pub mod synthetic;
pub mod time;

pub use time::Time;
