use super::basic::outcome;
use super::search::{Anchored, Residual};
use super::{precondition, violation, Instance, ListSolver, SolverConfig, SolverError, SolverOutcome, SolverStats};
use crate::colouring::{solve_tree_sets, Answer};
use crate::metric::{largest_induced_cycle_upto_with_budget, DEFAULT_CYCLE_SEARCH_BUDGET};
use crate::recognition::{contains_induced, find_k4, PolyadSpec};

/// Cap on the vertices that keep three colours after colouring a largest
/// induced cycle of length `p <= 2d + 1` in a chair-free graph.
pub fn chair_beta(d: usize, p: usize) -> u64 {
    let deep = |unit: u64, shift: u32| -> u64 {
        (3..=d as u32).map(|i| unit.saturating_mul(1u64 << (i - shift).min(62))).fold(0u64, u64::saturating_add)
    };
    let width = 2 * d as u64 + 1;
    if p >= 4 {
        deep(width, 1).saturating_add(width)
    } else {
        deep(18, 2).saturating_add(18 + 3)
    }
}

/// Chair-free graphs of bounded diameter.
pub struct ChairFree;

impl ChairFree {
    fn bound(&self, inst: &Instance<'_>, cfg: &SolverConfig) -> Result<usize, SolverError> {
        if cfg.d.is_some_and(|d| d < 2) {
            return Err(precondition(self.name(), "diameter bound must be at least 2"));
        }
        Ok(inst.diameter_bound(cfg, self.name())?.max(2))
    }
}

impl ListSolver for ChairFree {
    fn name(&self) -> &'static str {
        "chair-free"
    }

    fn summary(&self) -> &'static str {
        "chair-free, diameter <= d, lists in {1,2,3}; anchors on a largest short induced cycle"
    }

    fn admits(&self, inst: &Instance<'_>, cfg: &SolverConfig) -> bool {
        inst.is_list3()
            && self.bound(inst, cfg).is_ok()
            && matches!(contains_induced(inst.graph, &PolyadSpec::CHAIR), Ok(None))
    }

    fn solve(&self, inst: &Instance<'_>, cfg: &SolverConfig) -> Result<SolverOutcome, SolverError> {
        if !inst.is_list3() {
            return Err(precondition(self.name(), "lists must lie inside {1, 2, 3}"));
        }
        let d = self.bound(inst, cfg)?;
        let g = inst.graph;
        if g.is_tree() {
            return Ok(outcome("chair-free/tree", solve_tree_sets(g, inst.lists.lists())?, SolverStats::default()));
        }
        if find_k4(g).is_some() {
            return Ok(SolverOutcome::unsat("chair-free/k4", SolverStats::default()));
        }
        let cycle = largest_induced_cycle_upto_with_budget(g, 2 * d + 1, DEFAULT_CYCLE_SEARCH_BUDGET)?
            .ok_or_else(|| violation(self.name(), format!("no induced cycle of length at most {}", 2 * d + 1)))?;
        let p = cycle.len();
        let beta = chair_beta(d, p);
        let mut search = Anchored {
            solver: self.name(),
            graph: g,
            lists: inst.lists.lists(),
            budget: cfg.node_budget,
            stats: SolverStats {
                outer_bound: Some(3u64.saturating_pow(p as u32)),
                inner_bound: Some(beta),
                ..SolverStats::default()
            },
        };
        let residual = Residual::Enumerate { bound: usize::try_from(beta).unwrap_or(usize::MAX) };
        let found = search.run(&cycle, residual)?;
        Ok(outcome(self.name(), found.map_or(Answer::Unsat, Answer::Sat), search.stats))
    }
}
