//! Simulated annealing over storage assignments.

mod engine;
pub mod moves;
mod schedule;

pub use engine::{
    accept, anneal, anneal_restarts, AnnealError, Annealer, IterationEvent, Observer,
    RestartOutcome, RunTrace, TempRecord,
};
pub use moves::{
    apply_move, check_move, propose_container_swap, propose_subsection_swap, revert_move, Move,
    MoveError, MoveKind, MoveSampler,
};
pub use schedule::{AnnealSchedule, ScheduleError};
