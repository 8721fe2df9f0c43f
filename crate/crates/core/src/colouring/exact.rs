use serde::Serialize;

use super::{Answer, Colour, ColourSet, Colouring, ColouringError, ListAssignment, MAX_COLOUR};
use crate::graph::Graph;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExactStats {
    /// Colour assignments tried.
    pub nodes: u64,
}

/// Exhaustive list colouring with the default node budget.
pub fn exact_solve(g: &Graph, lists: &ListAssignment) -> Result<Answer, ColouringError> {
    exact_solve_with_budget(g, lists, DEFAULT_NODE_BUDGET).map(|(a, _)| a)
}

/// Backtracking with forward checking; branches on the uncoloured vertex with
/// the fewest remaining colours, lowest index first.
pub fn exact_solve_with_budget(
    g: &Graph,
    lists: &ListAssignment,
    budget: u64,
) -> Result<(Answer, ExactStats), ColouringError> {
    lists.check_len(g)?;
    exact_solve_sets(g, lists.lists(), budget)
}

pub(crate) fn exact_solve_sets(
    g: &Graph,
    lists: &[ColourSet],
    budget: u64,
) -> Result<(Answer, ExactStats), ColouringError> {
    let mut search = Search {
        g,
        lists: lists.to_vec(),
        colour: vec![None; lists.len()],
        stats: ExactStats::default(),
        budget,
    };
    if search.lists.iter().any(|l| l.is_empty()) {
        return Ok((Answer::Unsat, search.stats));
    }
    let found = search.run()?;
    let answer = if found {
        Answer::Sat(Colouring::from_total(search.colour.iter().map(|c| c.unwrap()).collect()))
    } else {
        Answer::Unsat
    };
    Ok((answer, search.stats))
}

struct Search<'a> {
    g: &'a Graph,
    lists: Vec<ColourSet>,
    colour: Vec<Option<Colour>>,
    stats: ExactStats,
    budget: u64,
}

impl Search<'_> {
    fn pick(&self) -> Option<usize> {
        (0..self.lists.len())
            .filter(|&v| self.colour[v].is_none())
            .min_by_key(|&v| (self.lists[v].len(), v))
    }

    fn run(&mut self) -> Result<bool, ColouringError> {
        let Some(v) = self.pick() else {
            return Ok(true);
        };
        let mut trimmed = Vec::new();
        for c in self.lists[v].iter() {
            self.stats.nodes += 1;
            if self.stats.nodes > self.budget {
                return Err(ColouringError::BudgetExceeded(self.budget));
            }
            self.colour[v] = Some(c);
            let mut wiped = false;
            for &w in self.g.neighbours(v) {
                if self.colour[w].is_none() && self.lists[w].remove(c) {
                    trimmed.push(w);
                    wiped |= self.lists[w].is_empty();
                }
            }
            if !wiped && self.run()? {
                return Ok(true);
            }
            for w in trimmed.drain(..) {
                self.lists[w].insert(c);
            }
            self.colour[v] = None;
        }
        Ok(false)
    }
}

/// Smallest `k` for which the graph is `k`-colourable.
pub fn chromatic_number(g: &Graph) -> Result<usize, ColouringError> {
    if g.n() == 0 {
        return Ok(0);
    }
    let upper = (g.max_degree() + 1).min(MAX_COLOUR as usize);
    for k in 1..=upper {
        let l = ListAssignment::full(g.n(), k as Colour);
        if exact_solve(g, &l)?.is_sat() {
            return Ok(k);
        }
    }
    Err(ColouringError::ColourOutOfRange(upper as Colour + 1))
}
