use super::basic::outcome;
use super::{precondition, violation, Instance, ListSolver, RamseyBound, SolverConfig, SolverError, SolverOutcome, SolverStats};
use crate::colouring::exact_solve_sets;
use crate::recognition::{find_clique, is_almost_k1r_free, MAX_ALMOST_R};

/// `1 + B + B^2 + ... + B^d` with `B = R(k, (r-1) r)`: the largest possible
/// order of a `k`-colourable almost `K_{1,r}`-free graph of diameter `d`.
pub fn almost_beta(k: usize, r: usize, d: usize) -> u64 {
    let b = RamseyBound::new(k, (r - 1) * r).value;
    let mut term = 1u64;
    let mut sum = 1u64;
    for _ in 0..d {
        term = term.saturating_mul(b);
        sum = sum.saturating_add(term);
    }
    sum
}

/// Almost `K_{1,r}`-free graphs of bounded diameter: either a `(k+1)`-clique
/// settles the instance or the graph has bounded order.
pub struct AlmostK1rFree;

impl ListSolver for AlmostK1rFree {
    fn name(&self) -> &'static str {
        "almost-k1r-free"
    }

    fn summary(&self) -> &'static str {
        "almost K1,r-free, diameter <= d, list-k; clique test, then search on at most beta(k,r) vertices"
    }

    fn admits(&self, inst: &Instance<'_>, cfg: &SolverConfig) -> bool {
        let k = inst.palette(cfg);
        k >= 1
            && inst.lists.within_palette(k)
            && inst.diameter_bound(cfg, self.name()).is_ok()
            && is_almost_k1r_free(inst.graph, cfg.r).is_ok_and(|rep| rep.member)
    }

    fn solve(&self, inst: &Instance<'_>, cfg: &SolverConfig) -> Result<SolverOutcome, SolverError> {
        let d = inst.diameter_bound(cfg, self.name())?;
        let k = inst.palette(cfg);
        let r = cfg.r;
        if k == 0 || !inst.lists.within_palette(k) {
            return Err(precondition(self.name(), format!("lists must lie inside {{1..{k}}}")));
        }
        if !(3..=MAX_ALMOST_R).contains(&r) {
            return Err(precondition(self.name(), format!("r must lie in 3..={MAX_ALMOST_R}")));
        }
        let g = inst.graph;
        for u in g.vertices() {
            if find_clique(g, g.neighbours(u), k as usize).is_some() {
                return Ok(SolverOutcome::unsat("almost-k1r-free/clique", SolverStats::default()));
            }
        }
        let bound = RamseyBound::new(k as usize, (r - 1) * r).value;
        if let Some(u) = g.vertices().find(|&u| g.degree(u) as u64 >= bound) {
            return Err(violation(
                self.name(),
                format!("vertex {u} has degree {} >= R({k},{}) = {bound} and no {k}-clique nearby", g.degree(u), (r - 1) * r),
            ));
        }
        let beta = almost_beta(k as usize, r, d);
        let mut stats = SolverStats::default();
        stats.note_margin(beta, g.n() as u64);
        if g.n() as u64 > beta {
            return Err(violation(self.name(), format!("{} vertices exceed beta = {beta}", g.n())));
        }
        let (answer, exact) = exact_solve_sets(g, inst.lists.lists(), cfg.node_budget)?;
        stats.exact_nodes = exact.nodes;
        Ok(outcome("almost-k1r-free/bounded", answer, stats))
    }
}
