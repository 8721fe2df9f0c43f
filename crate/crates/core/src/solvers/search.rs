//! The branching scheme shared by the diameter-bounded solvers: colour a
//! small anchor set in every possible way, propagate, optionally colour the
//! vertices that still have three colours, and finish each branch as a
//! 2-list instance.

use super::{violation, SolverError, SolverStats};
use crate::colouring::{
    enumerate_respecting_colourings, propagate, solve_two_list_sets, Answer, ColourSet, Colouring,
    ColouringError, PropagationState,
};
use crate::graph::Graph;

/// What to do with vertices whose list survives propagation at full size.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Residual {
    /// The proof shows there are none.
    Forbidden,
    /// Enumerate their colourings; the proof bounds how many there are.
    Enumerate { bound: usize },
}

pub(crate) struct Anchored<'a> {
    pub solver: &'static str,
    pub graph: &'a Graph,
    pub lists: &'a [ColourSet],
    pub budget: u64,
    pub stats: SolverStats,
}

impl Anchored<'_> {
    /// Exhausts every respecting colouring of `anchor`; returns a colouring
    /// if some branch extends.
    pub fn run(&mut self, anchor: &[usize], residual: Residual) -> Result<Option<Colouring>, SolverError> {
        let outer = enumerate_respecting_colourings(self.graph, anchor, self.lists, anchor.len())?;
        for branch in outer {
            self.tick(true)?;
            let mut state = PropagationState::from_sets(self.lists.to_vec());
            for (v, c) in branch {
                state.assign(v, c);
            }
            let state = propagate(self.graph, state);
            if state.is_failed() {
                continue;
            }
            let found = match residual {
                Residual::Forbidden => self.finish(&state)?,
                Residual::Enumerate { bound } => self.residual(&state, bound)?,
            };
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    fn residual(&mut self, state: &PropagationState, bound: usize) -> Result<Option<Colouring>, SolverError> {
        let free = state.with_list_size_at_least(3);
        self.stats.note_margin(bound as u64, free.len() as u64);
        self.stats.inner_set_max = self.stats.inner_set_max.max(Some(free.len() as u64));
        if free.len() > bound {
            return Err(violation(
                self.solver,
                format!("{} vertices keep three colours after propagation, bound is {bound}", free.len()),
            ));
        }
        let inner = enumerate_respecting_colourings(self.graph, &free, &state.lists, bound)?;
        for branch in inner {
            self.tick(false)?;
            let mut next = state.clone();
            for (v, c) in branch {
                next.assign(v, c);
            }
            let next = propagate(self.graph, next);
            if next.is_failed() {
                continue;
            }
            if let Some(c) = self.finish(&next)? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    fn finish(&mut self, state: &PropagationState) -> Result<Option<Colouring>, SolverError> {
        let widest = state.max_list_size();
        self.stats.note_margin(2, widest as u64);
        if widest > 2 {
            let v = state.with_list_size_at_least(3)[0];
            return Err(violation(self.solver, format!("vertex {v} keeps {widest} colours after propagation")));
        }
        self.stats.two_list_calls += 1;
        match solve_two_list_sets(self.graph, &state.lists)? {
            Answer::Sat(c) => Ok(Some(c)),
            Answer::Unsat => Ok(None),
        }
    }

    fn tick(&mut self, outer: bool) -> Result<(), SolverError> {
        if outer {
            self.stats.outer_branches += 1;
        } else {
            self.stats.inner_branches += 1;
        }
        if self.stats.outer_branches + self.stats.inner_branches > self.budget {
            return Err(ColouringError::BudgetExceeded(self.budget).into());
        }
        Ok(())
    }
}
