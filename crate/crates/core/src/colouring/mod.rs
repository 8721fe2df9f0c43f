//! List-colouring machinery shared by every solver: propagation of forced
//! colours, the 2-list solver, the exact oracle, bounded enumeration and the
//! tree and cycle dynamic programmes.

mod enumerate;
mod exact;
mod lists;
mod propagate;
mod structured;
mod two_list;

use serde::Serialize;
use thiserror::Error;

pub use enumerate::{enumerate_respecting_colourings, PartialColouring, RespectingColourings, DEFAULT_ENUMERATION_BOUND};
pub use exact::{chromatic_number, exact_solve, exact_solve_with_budget, ExactStats, DEFAULT_NODE_BUDGET};
pub use lists::{parse_lists, validate, write_lists, validate_partial, Colour, ColourSet, Colouring, Defect, ListAssignment, MAX_COLOUR};
pub use propagate::{propagate, propagate_with_order, PropagationState, PropagationStatus};
pub use structured::{solve_cycle_list, solve_tree_list};
pub use two_list::solve_two_list;

pub(crate) use exact::exact_solve_sets;
pub(crate) use structured::{solve_cycle_sets, solve_tree_sets};
pub(crate) use two_list::solve_two_list_sets;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColouringError {
    #[error("colour {0} outside 1..=64")]
    ColourOutOfRange(Colour),
    #[error("list of vertex {vertex} leaves the palette 1..={palette}")]
    OutsidePalette { vertex: usize, palette: Colour },
    #[error("list of vertex {vertex} has {size} colours, at most 2 allowed")]
    ListTooLarge { vertex: usize, size: usize },
    #[error("expected {expected} lists, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("graph is not a tree")]
    NotATree,
    #[error("graph is not a cycle")]
    NotACycle,
    #[error("enumeration over {size} vertices exceeds the bound {bound}")]
    EnumerationBound { size: usize, bound: usize },
    #[error("node budget of {0} exceeded")]
    BudgetExceeded(u64),
    #[error("invalid vertex {0}")]
    InvalidVertex(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Result of a list-colouring decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Answer {
    Sat(Colouring),
    Unsat,
}

impl Answer {
    pub fn is_sat(&self) -> bool {
        matches!(self, Answer::Sat(_))
    }

    pub fn colouring(&self) -> Option<&Colouring> {
        match self {
            Answer::Sat(c) => Some(c),
            Answer::Unsat => None,
        }
    }

    pub fn verdict(&self) -> Verdict {
        if self.is_sat() {
            Verdict::Sat
        } else {
            Verdict::Unsat
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Sat,
    Unsat,
}
