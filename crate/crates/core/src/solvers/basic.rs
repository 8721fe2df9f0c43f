use super::{precondition, Instance, ListSolver, SolverConfig, SolverError, SolverOutcome, SolverStats};
use crate::colouring::{exact_solve_sets, solve_cycle_sets, solve_tree_sets, solve_two_list_sets, Answer};

pub(crate) fn outcome(path: &str, answer: Answer, stats: SolverStats) -> SolverOutcome {
    match answer {
        Answer::Sat(c) => SolverOutcome::sat(path, c, stats),
        Answer::Unsat => SolverOutcome::unsat(path, stats),
    }
}

/// Lists of size at most two, by 2-SAT.
pub struct TwoList;

impl ListSolver for TwoList {
    fn name(&self) -> &'static str {
        "two-list"
    }

    fn summary(&self) -> &'static str {
        "every list has at most two colours; linear time via 2-SAT"
    }

    fn admits(&self, inst: &Instance<'_>, _: &SolverConfig) -> bool {
        inst.lists.max_list_size() <= 2
    }

    fn solve(&self, inst: &Instance<'_>, _: &SolverConfig) -> Result<SolverOutcome, SolverError> {
        let stats = SolverStats { two_list_calls: 1, ..SolverStats::default() };
        Ok(outcome(self.name(), solve_two_list_sets(inst.graph, inst.lists.lists())?, stats))
    }
}

/// Trees, by feasible colour sets.
pub struct TreeDp;

impl ListSolver for TreeDp {
    fn name(&self) -> &'static str {
        "tree"
    }

    fn summary(&self) -> &'static str {
        "trees with arbitrary lists; bottom-up feasible sets"
    }

    fn admits(&self, inst: &Instance<'_>, _: &SolverConfig) -> bool {
        inst.graph.is_tree()
    }

    fn solve(&self, inst: &Instance<'_>, _: &SolverConfig) -> Result<SolverOutcome, SolverError> {
        Ok(outcome(self.name(), solve_tree_sets(inst.graph, inst.lists.lists())?, SolverStats::default()))
    }
}

/// Cycles, by fixing one vertex and sweeping the rest.
pub struct CycleDp;

impl ListSolver for CycleDp {
    fn name(&self) -> &'static str {
        "cycle"
    }

    fn summary(&self) -> &'static str {
        "cycles with arbitrary lists; one sweep per colour of a fixed vertex"
    }

    fn admits(&self, inst: &Instance<'_>, _: &SolverConfig) -> bool {
        inst.graph.is_cycle()
    }

    fn solve(&self, inst: &Instance<'_>, _: &SolverConfig) -> Result<SolverOutcome, SolverError> {
        Ok(outcome(self.name(), solve_cycle_sets(inst.graph, inst.lists.lists())?, SolverStats::default()))
    }
}

/// Backtracking oracle; admits everything.
pub struct Exact;

impl ListSolver for Exact {
    fn name(&self) -> &'static str {
        "exact"
    }

    fn summary(&self) -> &'static str {
        "exhaustive backtracking with forward checking; exponential worst case"
    }

    fn admits(&self, _: &Instance<'_>, _: &SolverConfig) -> bool {
        true
    }

    fn solve(&self, inst: &Instance<'_>, cfg: &SolverConfig) -> Result<SolverOutcome, SolverError> {
        if cfg.node_budget == 0 {
            return Err(precondition(self.name(), "node budget must be positive"));
        }
        let (answer, exact) = exact_solve_sets(inst.graph, inst.lists.lists(), cfg.node_budget)?;
        let stats = SolverStats {
            exact_nodes: exact.nodes,
            fallback: Some("exhaustive search".into()),
            ..SolverStats::default()
        };
        Ok(outcome(self.name(), answer, stats))
    }
}
