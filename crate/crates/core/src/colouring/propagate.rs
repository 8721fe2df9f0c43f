use serde::Serialize;

use super::{Colour, ColourSet, Colouring, ListAssignment};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PropagationStatus {
    Open,
    Failed,
}

/// Working lists during a search. Vertices with a singleton list count as
/// coloured once their colour has been removed from every neighbour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropagationState {
    pub lists: Vec<ColourSet>,
    pub fixed: Vec<bool>,
    pub status: PropagationStatus,
}

impl PropagationState {
    pub fn new(lists: &ListAssignment) -> Self {
        Self::from_sets(lists.lists().to_vec())
    }

    pub fn from_sets(lists: Vec<ColourSet>) -> Self {
        let n = lists.len();
        PropagationState { lists, fixed: vec![false; n], status: PropagationStatus::Open }
    }

    pub fn is_failed(&self) -> bool {
        self.status == PropagationStatus::Failed
    }

    /// Restricts the list of `v` to `{c}` (empty if `c` was not admissible).
    pub fn assign(&mut self, v: usize, c: Colour) {
        self.lists[v] = self.lists[v].intersection(ColourSet::singleton(c));
    }

    /// Vertices whose list still has at least `size` colours.
    pub fn with_list_size_at_least(&self, size: usize) -> Vec<usize> {
        (0..self.lists.len()).filter(|&v| self.lists[v].len() >= size).collect()
    }

    pub fn max_list_size(&self) -> usize {
        self.lists.iter().map(|l| l.len()).max().unwrap_or(0)
    }

    /// Fixed vertices coloured, the rest uncoloured.
    pub fn colouring(&self) -> Colouring {
        let mut c = Colouring::uncoloured(self.lists.len());
        for (v, list) in self.lists.iter().enumerate() {
            if self.fixed[v] {
                c.set(v, list.only().expect("fixed vertices have singleton lists"));
            }
        }
        c
    }
}

/// Applies "a singleton list removes its colour from every neighbour" until
/// nothing changes. Fails as soon as a list becomes empty.
pub fn propagate(g: &Graph, state: PropagationState) -> PropagationState {
    let order: Vec<usize> = g.vertices().collect();
    propagate_with_order(g, state, &order)
}

/// [`propagate`] with the initial work queue seeded in `order`; the fixpoint
/// does not depend on it.
pub fn propagate_with_order(g: &Graph, mut state: PropagationState, order: &[usize]) -> PropagationState {
    if state.is_failed() {
        return state;
    }
    if state.lists.iter().any(|l| l.is_empty()) {
        state.status = PropagationStatus::Failed;
        return state;
    }
    let mut queue: Vec<usize> = order
        .iter()
        .copied()
        .filter(|&v| !state.fixed[v] && state.lists[v].len() == 1)
        .collect();
    queue.reverse();
    while let Some(v) = queue.pop() {
        if state.fixed[v] {
            continue;
        }
        state.fixed[v] = true;
        let c = state.lists[v].only().expect("queued vertices are singletons");
        for &w in g.neighbours(v) {
            if state.lists[w].remove(c) {
                match state.lists[w].len() {
                    0 => {
                        state.status = PropagationStatus::Failed;
                        return state;
                    }
                    1 if !state.fixed[w] => queue.push(w),
                    _ => {}
                }
            }
        }
    }
    state
}
