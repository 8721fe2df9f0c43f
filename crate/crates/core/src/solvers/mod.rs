//! Class-specific list-colouring algorithms behind a common [`ListSolver`]
//! trait. A [`SolverRegistry`] holds them by name; [`dispatch`] analyses an
//! instance and runs the first solver that admits it.

mod almost;
mod basic;
mod chair;
mod diameter_two;
mod girth;
mod ramsey;
mod search;

use std::cell::OnceCell;

use serde::Serialize;
use thiserror::Error;

use crate::colouring::{validate, Colour, Colouring, ColouringError, Defect, ListAssignment, Verdict, DEFAULT_NODE_BUDGET};
use crate::graph::{Distance, Graph, GraphError};
use crate::metric;

pub use almost::{almost_beta, AlmostK1rFree};
pub use basic::{CycleDp, Exact, TreeDp, TwoList};
pub use chair::{chair_beta, ChairFree};
pub use diameter_two::{C5FreeDiam2, ClawCentresIndependentDiam2, K1r2FreeDiam2, QuasiClawFreeDiam2, S122FreeDiam2};
pub use girth::{list_colour_complete, moore_regularity, ExtremalGirth};
pub use ramsey::RamseyBound;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("{solver}: precondition failed: {reason}")]
    Precondition { solver: String, reason: String },
    #[error("{solver}: promise violation: {note}")]
    PromiseViolation { solver: String, note: String },
    #[error("unknown solver `{0}`")]
    UnknownSolver(String),
    #[error("{solver} produced an invalid colouring: {defect}")]
    InvalidColouring { solver: String, defect: Defect },
    #[error(transparent)]
    Colouring(#[from] ColouringError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Counters reported alongside every verdict.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolverStats {
    /// Colourings of the anchor set (pair plus common neighbour, or cycle).
    pub outer_branches: u64,
    /// The proof's cap on `outer_branches`.
    pub outer_bound: Option<u64>,
    /// Colourings of the residual list-3 set, summed over outer branches.
    pub inner_branches: u64,
    /// The proof's cap on the residual set; inner branches are at most
    /// `3^inner_bound` per outer branch.
    pub inner_bound: Option<u64>,
    /// Largest residual set met.
    pub inner_set_max: Option<u64>,
    pub two_list_calls: u64,
    pub exact_nodes: u64,
    /// Smallest slack between an asserted bound and the observed value.
    pub assertion_margin: Option<i64>,
    /// Set when the answer came from exhaustive search rather than a
    /// polynomial algorithm.
    pub fallback: Option<String>,
}

impl SolverStats {
    pub(crate) fn note_margin(&mut self, bound: u64, observed: u64) {
        let m = bound as i64 - observed as i64;
        self.assertion_margin = Some(self.assertion_margin.map_or(m, |old| old.min(m)));
    }

    fn absorb(&mut self, other: &SolverStats) {
        self.outer_branches += other.outer_branches;
        self.inner_branches += other.inner_branches;
        self.two_list_calls += other.two_list_calls;
        self.exact_nodes += other.exact_nodes;
        self.outer_bound = self.outer_bound.max(other.outer_bound);
        self.inner_bound = self.inner_bound.max(other.inner_bound);
        self.inner_set_max = self.inner_set_max.max(other.inner_set_max);
        if let Some(m) = other.assertion_margin {
            self.assertion_margin = Some(self.assertion_margin.map_or(m, |old| old.min(m)));
        }
        if self.fallback.is_none() {
            self.fallback.clone_from(&other.fallback);
        }
    }

    /// Whether the branch counters respect the recorded bounds.
    pub fn within_bounds(&self) -> bool {
        let outer_ok = self.outer_bound.is_none_or(|b| self.outer_branches <= b);
        let inner_ok = match (self.inner_bound, self.outer_bound) {
            (Some(ib), Some(ob)) => {
                let cap = (ob as f64) * 3f64.powf(ib as f64);
                (self.inner_branches as f64) <= cap
            }
            _ => true,
        };
        outer_ok && inner_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolverOutcome {
    pub verdict: Verdict,
    pub colouring: Option<Colouring>,
    /// Solver name, optionally followed by `/branch`.
    pub path: String,
    pub stats: SolverStats,
    /// A proof-derived bound that failed, after which the answer was
    /// recomputed by exhaustive search.
    pub violation: Option<String>,
}

impl SolverOutcome {
    pub fn sat(path: impl Into<String>, colouring: Colouring, stats: SolverStats) -> Self {
        SolverOutcome { verdict: Verdict::Sat, colouring: Some(colouring), path: path.into(), stats, violation: None }
    }

    pub fn unsat(path: impl Into<String>, stats: SolverStats) -> Self {
        SolverOutcome { verdict: Verdict::Unsat, colouring: None, path: path.into(), stats, violation: None }
    }

    pub fn is_sat(&self) -> bool {
        self.verdict == Verdict::Sat
    }
}

/// Parameters shared by all solvers; each reads the fields it needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Diameter bound `d`; defaults to the measured diameter.
    pub d: Option<usize>,
    /// Palette size `k` for list-`k` solvers; defaults to the declared
    /// palette of the lists, else their largest colour.
    pub k: Option<Colour>,
    /// Star size `r` for the `K_{1,r}`-based classes.
    pub r: usize,
    pub node_budget: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { d: None, k: None, r: 3, node_budget: DEFAULT_NODE_BUDGET }
    }
}

/// A graph with lists, plus lazily computed metrics.
pub struct Instance<'a> {
    pub graph: &'a Graph,
    pub lists: &'a ListAssignment,
    diameter: OnceCell<Distance>,
    girth: OnceCell<Distance>,
}

impl<'a> Instance<'a> {
    pub fn new(graph: &'a Graph, lists: &'a ListAssignment) -> Result<Self, SolverError> {
        lists.check_len(graph)?;
        Ok(Instance { graph, lists, diameter: OnceCell::new(), girth: OnceCell::new() })
    }

    pub fn diameter(&self) -> Distance {
        *self.diameter.get_or_init(|| metric::diameter(self.graph))
    }

    pub fn girth(&self) -> Distance {
        *self.girth.get_or_init(|| metric::girth(self.graph))
    }

    /// Every list inside `{1, 2, 3}`.
    pub fn is_list3(&self) -> bool {
        self.lists.within_palette(3)
    }

    pub fn palette(&self, cfg: &SolverConfig) -> Colour {
        cfg.k.or(self.lists.palette()).unwrap_or_else(|| self.lists.max_colour())
    }

    /// The configured diameter bound, checked against the measured one.
    pub fn diameter_bound(&self, cfg: &SolverConfig, solver: &str) -> Result<usize, SolverError> {
        let actual = self.diameter().finite().ok_or_else(|| precondition(solver, "graph is disconnected"))?;
        let d = cfg.d.unwrap_or(actual);
        if actual > d {
            return Err(precondition(solver, format!("diameter {actual} exceeds {d}")));
        }
        Ok(d)
    }
}

/// One list-colouring algorithm.
pub trait ListSolver: Send + Sync {
    fn name(&self) -> &'static str;

    fn summary(&self) -> &'static str;

    /// Whether `inst` meets this solver's precondition, including class
    /// membership checked by recognition.
    fn admits(&self, inst: &Instance<'_>, cfg: &SolverConfig) -> bool;

    /// Solves `inst`. Only cheap preconditions are checked; class promises
    /// are trusted and reported as violations when a bound fails.
    fn solve(&self, inst: &Instance<'_>, cfg: &SolverConfig) -> Result<SolverOutcome, SolverError>;
}

/// Solvers in dispatch priority order.
pub struct SolverRegistry {
    solvers: Vec<Box<dyn ListSolver>>,
}

impl Default for SolverRegistry {
    fn default() -> Self {
        let mut r = SolverRegistry::empty();
        r.register(Box::new(TwoList));
        r.register(Box::new(TreeDp));
        r.register(Box::new(CycleDp));
        r.register(Box::new(ExtremalGirth));
        r.register(Box::new(QuasiClawFreeDiam2));
        r.register(Box::new(ClawCentresIndependentDiam2));
        r.register(Box::new(S122FreeDiam2));
        r.register(Box::new(K1r2FreeDiam2));
        r.register(Box::new(ChairFree));
        r.register(Box::new(AlmostK1rFree));
        r.register(Box::new(C5FreeDiam2));
        r.register(Box::new(Exact));
        r
    }
}

impl SolverRegistry {
    pub fn empty() -> Self {
        SolverRegistry { solvers: Vec::new() }
    }

    /// Appends `solver`, replacing any solver of the same name in place.
    pub fn register(&mut self, solver: Box<dyn ListSolver>) {
        match self.solvers.iter().position(|s| s.name() == solver.name()) {
            Some(i) => self.solvers[i] = solver,
            None => self.solvers.push(solver),
        }
    }

    pub fn get(&self, name: &str) -> Option<&dyn ListSolver> {
        self.solvers.iter().find(|s| s.name() == name).map(|s| s.as_ref())
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.solvers.iter().map(|s| s.name())
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn ListSolver> + '_ {
        self.solvers.iter().map(|s| s.as_ref())
    }

    /// Runs one named solver and validates any colouring it returns.
    pub fn run(&self, name: &str, g: &Graph, lists: &ListAssignment, cfg: &SolverConfig) -> Result<SolverOutcome, SolverError> {
        let solver = self.get(name).ok_or_else(|| SolverError::UnknownSolver(name.to_string()))?;
        let inst = Instance::new(g, lists)?;
        run_checked(solver, &inst, cfg)
    }

    /// Analyses the instance and runs the first admitting solver. A promise
    /// violation is recorded and the instance re-solved exhaustively.
    pub fn dispatch(&self, g: &Graph, lists: &ListAssignment, hints: &DispatchHints) -> Result<SolverOutcome, SolverError> {
        lists.check_len(g)?;
        let cfg = &hints.config;
        let parts = g.components();
        if parts.len() > 1 {
            return self.dispatch_components(g, lists, hints, &parts);
        }
        let inst = Instance::new(g, lists)?;
        let solver = match &hints.solver {
            Some(name) => self.get(name).ok_or_else(|| SolverError::UnknownSolver(name.clone()))?,
            None => self
                .iter()
                .find(|s| s.admits(&inst, cfg))
                .expect("the exact solver admits everything"),
        };
        match run_checked(solver, &inst, cfg) {
            Err(SolverError::PromiseViolation { solver, note }) => {
                let mut out = run_checked(&Exact, &inst, cfg)?;
                out.path = format!("{solver} -> exact");
                out.violation = Some(note);
                Ok(out)
            }
            other => other,
        }
    }

    fn dispatch_components(
        &self,
        g: &Graph,
        lists: &ListAssignment,
        hints: &DispatchHints,
        parts: &[Vec<usize>],
    ) -> Result<SolverOutcome, SolverError> {
        let mut colouring = Colouring::uncoloured(g.n());
        let mut stats = SolverStats::default();
        let mut paths = Vec::new();
        let mut violation: Option<String> = None;
        let mut verdict = Verdict::Sat;
        for part in parts {
            let sub = g.induced_subgraph(part);
            let sub_lists = lists.restrict(part);
            let out = self.dispatch(&sub, &sub_lists, hints)?;
            stats.absorb(&out.stats);
            paths.push(out.path.clone());
            if let Some(v) = out.violation {
                violation.get_or_insert(v);
            }
            match out.colouring {
                Some(c) => {
                    for (i, &v) in part.iter().enumerate() {
                        colouring.set(v, c.get(i).expect("component colouring is total"));
                    }
                }
                None => {
                    verdict = Verdict::Unsat;
                    break;
                }
            }
        }
        let path = format!("components[{}]", paths.join(", "));
        let mut out = match verdict {
            Verdict::Sat => SolverOutcome::sat(path, colouring, stats),
            Verdict::Unsat => SolverOutcome::unsat(path, stats),
        };
        out.violation = violation;
        Ok(out)
    }
}

/// Dispatch options: an optional forced solver and the shared config.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DispatchHints {
    pub solver: Option<String>,
    pub config: SolverConfig,
}

fn run_checked(solver: &dyn ListSolver, inst: &Instance<'_>, cfg: &SolverConfig) -> Result<SolverOutcome, SolverError> {
    let out = solver.solve(inst, cfg)?;
    if let Some(c) = &out.colouring {
        validate(inst.graph, inst.lists, c)
            .map_err(|defect| SolverError::InvalidColouring { solver: solver.name().to_string(), defect })?;
    }
    Ok(out)
}

/// [`SolverRegistry::dispatch`] on the default registry.
pub fn dispatch(g: &Graph, lists: &ListAssignment, hints: &DispatchHints) -> Result<SolverOutcome, SolverError> {
    SolverRegistry::default().dispatch(g, lists, hints)
}

fn run_default(solver: &dyn ListSolver, g: &Graph, lists: &ListAssignment, cfg: &SolverConfig) -> Result<SolverOutcome, SolverError> {
    let inst = Instance::new(g, lists)?;
    run_checked(solver, &inst, cfg)
}

pub fn solve_extremal_girth(g: &Graph, lists: &ListAssignment, d: usize) -> Result<SolverOutcome, SolverError> {
    run_default(&ExtremalGirth, g, lists, &SolverConfig { d: Some(d), ..SolverConfig::default() })
}

pub fn solve_quasi_claw_free_diam2(g: &Graph, lists: &ListAssignment) -> Result<SolverOutcome, SolverError> {
    run_default(&QuasiClawFreeDiam2, g, lists, &SolverConfig::default())
}

pub fn solve_almost_k1r_free(
    g: &Graph,
    lists: &ListAssignment,
    k: Colour,
    r: usize,
    d: usize,
) -> Result<SolverOutcome, SolverError> {
    let cfg = SolverConfig { d: Some(d), k: Some(k), r, ..SolverConfig::default() };
    run_default(&AlmostK1rFree, g, lists, &cfg)
}

pub fn solve_claw_centres_independent_diam2(g: &Graph, lists: &ListAssignment) -> Result<SolverOutcome, SolverError> {
    run_default(&ClawCentresIndependentDiam2, g, lists, &SolverConfig::default())
}

pub fn solve_chair_free(g: &Graph, lists: &ListAssignment, d: usize) -> Result<SolverOutcome, SolverError> {
    run_default(&ChairFree, g, lists, &SolverConfig { d: Some(d), ..SolverConfig::default() })
}

pub fn solve_k1r2_free_diam2(g: &Graph, lists: &ListAssignment, r: usize) -> Result<SolverOutcome, SolverError> {
    run_default(&K1r2FreeDiam2, g, lists, &SolverConfig { r, ..SolverConfig::default() })
}

pub fn solve_s122_free_diam2(g: &Graph, lists: &ListAssignment) -> Result<SolverOutcome, SolverError> {
    run_default(&S122FreeDiam2, g, lists, &SolverConfig::default())
}

pub fn solve_c5_free_diam2(g: &Graph, lists: &ListAssignment) -> Result<SolverOutcome, SolverError> {
    run_default(&C5FreeDiam2, g, lists, &SolverConfig::default())
}

pub(crate) fn precondition(solver: &str, reason: impl Into<String>) -> SolverError {
    SolverError::Precondition { solver: solver.to_string(), reason: reason.into() }
}

pub(crate) fn violation(solver: &str, note: impl Into<String>) -> SolverError {
    SolverError::PromiseViolation { solver: solver.to_string(), note: note.into() }
}

/// Shared precondition of the list-3 solvers on diameter-2 graphs.
pub(crate) fn require_list3_diameter(inst: &Instance<'_>, solver: &str, d: usize) -> Result<(), SolverError> {
    if !inst.is_list3() {
        return Err(precondition(solver, "lists must lie inside {1, 2, 3}"));
    }
    match inst.diameter() {
        Distance::Finite(actual) if actual <= d => Ok(()),
        actual => Err(precondition(solver, format!("diameter {actual} exceeds {d}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::graph::named;

    #[test]
    fn registry_lookup_and_replace() {
        let mut r = SolverRegistry::default();
        let names: Vec<_> = r.names().collect();
        assert_eq!(names.first(), Some(&"two-list"));
        assert_eq!(names.last(), Some(&"exact"));
        assert!(r.get("chair-free").is_some());
        let before = names.len();
        r.register(Box::new(Exact));
        assert_eq!(r.names().count(), before);
        assert!(matches!(
            r.run("nope", &named::path(2), &ListAssignment::full(2, 3), &SolverConfig::default()),
            Err(SolverError::UnknownSolver(_))
        ));
    }

    #[test]
    fn dispatch_paths() {
        let hints = DispatchHints::default();
        let tree = named::star(4);
        let out = dispatch(&tree, &ListAssignment::full(5, 3), &hints).unwrap();
        assert_eq!(out.path, "tree");
        let g = builtin::fig2_left();
        let out = dispatch(&g, &ListAssignment::full(g.n(), 3), &hints).unwrap();
        assert_eq!(out.path, "quasi-claw-free-diam2");
        let k6 = named::complete(6);
        let out = dispatch(&k6, &ListAssignment::full(6, 7), &hints).unwrap();
        assert!(out.is_sat());
        assert_eq!(out.path, "extremal-girth/complete");
    }

    #[test]
    fn dispatch_splits_components() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
        let out = dispatch(&g, &ListAssignment::full(5, 3), &DispatchHints::default()).unwrap();
        assert!(out.is_sat());
        assert!(out.path.starts_with("components["));
        validate(&g, &ListAssignment::full(5, 3), out.colouring.as_ref().unwrap()).unwrap();
        let out = dispatch(&g, &ListAssignment::full(5, 2), &DispatchHints::default()).unwrap();
        assert_eq!(out.verdict, Verdict::Unsat);
    }

    #[test]
    fn forced_solver_violation_falls_back() {
        // P5 has diameter 4, so a forced diameter-2 solver refuses it.
        let g = named::path(5);
        let hints = DispatchHints { solver: Some("quasi-claw-free-diam2".into()), ..DispatchHints::default() };
        assert!(matches!(
            dispatch(&g, &ListAssignment::full(5, 3), &hints),
            Err(SolverError::Precondition { .. })
        ));
    }
}
