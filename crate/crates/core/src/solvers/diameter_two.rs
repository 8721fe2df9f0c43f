//! List 3-colouring on diameter-2 graphs from four classes. Each solver
//! anchors on a small vertex set (a pair with a common neighbour, or an
//! induced `C5`) and reduces every colouring of it to 2-list colouring.

use super::basic::outcome;
use super::search::{Anchored, Residual};
use super::{
    precondition, require_list3_diameter, violation, Instance, ListSolver, RamseyBound, SolverConfig, SolverError,
    SolverOutcome, SolverStats,
};
use crate::colouring::{exact_solve_sets, propagate, Answer, PropagationState};
use crate::graph::Graph;
use crate::recognition::{
    claw_centres_independent, contains_induced, find_k4, is_quasi_claw_free, quasi_centre, PolyadSpec,
};

const C5: PolyadSpec = PolyadSpec::Cycle { t: 5 };
const S122: PolyadSpec = PolyadSpec::SubdividedClaw { h: 1, i: 2, j: 2 };
/// Colourings of a 5-vertex anchor from lists of size three.
const C5_BRANCHES: u64 = 243;

fn diameter_two_list3(inst: &Instance<'_>) -> bool {
    inst.is_list3() && inst.diameter().at_most(2)
}

fn free_of(g: &Graph, spec: &PolyadSpec) -> bool {
    matches!(contains_induced(g, spec), Ok(None))
}

fn induced_c5(g: &Graph) -> Option<Vec<usize>> {
    contains_induced(g, &C5).expect("C5 is within the pattern bound")
}

/// Runs the `C5` anchoring, or the `C5`-free fallback when there is no
/// induced `C5`.
fn c5_anchored(
    solver: &'static str,
    inst: &Instance<'_>,
    cfg: &SolverConfig,
    residual: Residual,
    inner_bound: Option<u64>,
) -> Result<SolverOutcome, SolverError> {
    let Some(cycle) = induced_c5(inst.graph) else {
        let mut out = c5_free_exact(inst, cfg)?;
        out.path = format!("{solver}/c5-free");
        return Ok(out);
    };
    let mut search = Anchored {
        solver,
        graph: inst.graph,
        lists: inst.lists.lists(),
        budget: cfg.node_budget,
        stats: SolverStats { outer_bound: Some(C5_BRANCHES), inner_bound, ..SolverStats::default() },
    };
    let found = search.run(&cycle, residual)?;
    let answer = found.map_or(Answer::Unsat, Answer::Sat);
    Ok(outcome(solver, answer, search.stats))
}

fn c5_free_exact(inst: &Instance<'_>, cfg: &SolverConfig) -> Result<SolverOutcome, SolverError> {
    let g = inst.graph;
    let state = propagate(g, PropagationState::new(inst.lists));
    let mut stats = SolverStats {
        fallback: Some("exhaustive search on a C5-free diameter-2 instance".into()),
        ..SolverStats::default()
    };
    if state.is_failed() {
        return Ok(SolverOutcome::unsat("c5-free-diam2", stats));
    }
    let (answer, exact) = exact_solve_sets(g, &state.lists, cfg.node_budget)?;
    stats.exact_nodes = exact.nodes;
    Ok(outcome("c5-free-diam2", answer, stats))
}

fn k4_unsat(solver: &str, g: &Graph) -> Option<SolverOutcome> {
    find_k4(g).map(|_| SolverOutcome::unsat(format!("{solver}/k4"), SolverStats::default()))
}

/// Quasi-claw-free graphs of diameter at most 2.
pub struct QuasiClawFreeDiam2;

impl ListSolver for QuasiClawFreeDiam2 {
    fn name(&self) -> &'static str {
        "quasi-claw-free-diam2"
    }

    fn summary(&self) -> &'static str {
        "quasi-claw-free, diameter <= 2, lists in {1,2,3}; at most 27 branches"
    }

    fn admits(&self, inst: &Instance<'_>, _: &SolverConfig) -> bool {
        diameter_two_list3(inst) && is_quasi_claw_free(inst.graph).member
    }

    fn solve(&self, inst: &Instance<'_>, cfg: &SolverConfig) -> Result<SolverOutcome, SolverError> {
        require_list3_diameter(inst, self.name(), 2)?;
        let g = inst.graph;
        if g.is_complete() {
            let path = "quasi-claw-free-diam2/complete";
            if g.n() > 3 {
                return Ok(SolverOutcome::unsat(path, SolverStats::default()));
            }
            let (answer, exact) = exact_solve_sets(g, inst.lists.lists(), cfg.node_budget)?;
            let stats = SolverStats { exact_nodes: exact.nodes, ..SolverStats::default() };
            return Ok(outcome(path, answer, stats));
        }
        let anchor = dominated_pair(g)
            .ok_or_else(|| violation(self.name(), "no distance-2 pair has a common neighbour it dominates"))?;
        let mut search = Anchored {
            solver: self.name(),
            graph: g,
            lists: inst.lists.lists(),
            budget: cfg.node_budget,
            stats: SolverStats { outer_bound: Some(27), ..SolverStats::default() },
        };
        let found = search.run(&anchor, Residual::Forbidden)?;
        Ok(outcome(self.name(), found.map_or(Answer::Unsat, Answer::Sat), search.stats))
    }
}

/// `[u, v, w]` with `u, v` non-adjacent and `w` a common neighbour whose
/// neighbourhood `{u, v}` dominates.
fn dominated_pair(g: &Graph) -> Option<Vec<usize>> {
    for u in g.vertices() {
        for v in u + 1..g.n() {
            if g.has_edge(u, v) {
                continue;
            }
            let common: Vec<usize> = g.neighbours(u).iter().copied().filter(|&w| g.has_edge(w, v)).collect();
            if let Some(w) = quasi_centre(g, u, v, &common) {
                return Some(vec![u, v, w]);
            }
        }
    }
    None
}

/// Diameter-2 graphs whose claw centres are pairwise non-adjacent.
pub struct ClawCentresIndependentDiam2;

impl ListSolver for ClawCentresIndependentDiam2 {
    fn name(&self) -> &'static str {
        "claw-centres-independent-diam2"
    }

    fn summary(&self) -> &'static str {
        "claw centres independent, diameter <= 2, lists in {1,2,3}; at most 243 branches"
    }

    fn admits(&self, inst: &Instance<'_>, _: &SolverConfig) -> bool {
        diameter_two_list3(inst) && claw_centres_independent(inst.graph).member
    }

    fn solve(&self, inst: &Instance<'_>, cfg: &SolverConfig) -> Result<SolverOutcome, SolverError> {
        require_list3_diameter(inst, self.name(), 2)?;
        c5_anchored(self.name(), inst, cfg, Residual::Forbidden, None)
    }
}

/// `S_{1,2,2}`-free graphs of diameter at most 2.
pub struct S122FreeDiam2;

impl ListSolver for S122FreeDiam2 {
    fn name(&self) -> &'static str {
        "s122-free-diam2"
    }

    fn summary(&self) -> &'static str {
        "S1,2,2-free, diameter <= 2, lists in {1,2,3}; at most 243 branches"
    }

    fn admits(&self, inst: &Instance<'_>, _: &SolverConfig) -> bool {
        diameter_two_list3(inst) && free_of(inst.graph, &S122)
    }

    fn solve(&self, inst: &Instance<'_>, cfg: &SolverConfig) -> Result<SolverOutcome, SolverError> {
        require_list3_diameter(inst, self.name(), 2)?;
        c5_anchored(self.name(), inst, cfg, Residual::Forbidden, None)
    }
}

/// `K_{1,r}^2`-free graphs of diameter at most 2.
pub struct K1r2FreeDiam2;

impl K1r2FreeDiam2 {
    /// Cap on the vertices left with three colours after colouring a `C5`.
    pub fn residual_bound(r: usize) -> u64 {
        let b = RamseyBound::new(3, r - 1).value;
        5u64.saturating_mul(b.saturating_mul(b))
    }
}

impl ListSolver for K1r2FreeDiam2 {
    fn name(&self) -> &'static str {
        "k1r2-free-diam2"
    }

    fn summary(&self) -> &'static str {
        "K1,r^2-free, diameter <= 2, lists in {1,2,3}; residual set at most 5 R(3,r-1)^2"
    }

    fn admits(&self, inst: &Instance<'_>, cfg: &SolverConfig) -> bool {
        cfg.r >= 3
            && diameter_two_list3(inst)
            && free_of(inst.graph, &PolyadSpec::SubdividedStar { r: cfg.r, l: 2 })
    }

    fn solve(&self, inst: &Instance<'_>, cfg: &SolverConfig) -> Result<SolverOutcome, SolverError> {
        require_list3_diameter(inst, self.name(), 2)?;
        if cfg.r < 3 {
            return Err(precondition(self.name(), "r must be at least 3"));
        }
        if let Some(out) = k4_unsat(self.name(), inst.graph) {
            return Ok(out);
        }
        let bound = Self::residual_bound(cfg.r);
        let residual = Residual::Enumerate { bound: usize::try_from(bound).unwrap_or(usize::MAX) };
        c5_anchored(self.name(), inst, cfg, residual, Some(bound))
    }
}

/// `C5`-free graphs of diameter at most 2, by exhaustive search after
/// propagation.
pub struct C5FreeDiam2;

impl ListSolver for C5FreeDiam2 {
    fn name(&self) -> &'static str {
        "c5-free-diam2"
    }

    fn summary(&self) -> &'static str {
        "C5-free, diameter <= 2, lists in {1,2,3}; exhaustive search (not polynomial)"
    }

    fn admits(&self, inst: &Instance<'_>, _: &SolverConfig) -> bool {
        diameter_two_list3(inst) && induced_c5(inst.graph).is_none()
    }

    fn solve(&self, inst: &Instance<'_>, cfg: &SolverConfig) -> Result<SolverOutcome, SolverError> {
        require_list3_diameter(inst, self.name(), 2)?;
        c5_free_exact(inst, cfg)
    }
}
