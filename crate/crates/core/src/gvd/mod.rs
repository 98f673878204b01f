//! Transition data and verification harnesses.

pub mod transition;
pub mod verify;

pub use transition::{accessible_cells, maximal_accessible_cell, TransitionData};
pub use verify::{Report, Status};
