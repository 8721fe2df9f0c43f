use super::basic::outcome;
use super::{precondition, violation, Instance, ListSolver, SolverConfig, SolverError, SolverOutcome, SolverStats};
use crate::colouring::{exact_solve_sets, solve_cycle_sets, solve_tree_sets, Colour, ColourSet, Colouring, MAX_COLOUR};
use crate::graph::{Distance, Graph};
use crate::metric;

/// Connected graphs of diameter at most `d` and girth at least `2d + 1`:
/// trees, odd cycles, complete graphs and Moore graphs.
pub struct ExtremalGirth;

impl ListSolver for ExtremalGirth {
    fn name(&self) -> &'static str {
        "extremal-girth"
    }

    fn summary(&self) -> &'static str {
        "diameter <= d and girth >= 2d+1; trees, odd cycles, cliques or Moore graphs"
    }

    fn admits(&self, inst: &Instance<'_>, cfg: &SolverConfig) -> bool {
        match inst.diameter_bound(cfg, self.name()) {
            Ok(d) => girth_at_least(inst.girth(), 2 * d + 1),
            Err(_) => false,
        }
    }

    fn solve(&self, inst: &Instance<'_>, cfg: &SolverConfig) -> Result<SolverOutcome, SolverError> {
        let d = inst.diameter_bound(cfg, self.name())?;
        if !girth_at_least(inst.girth(), 2 * d + 1) {
            return Err(precondition(self.name(), format!("girth {} is below {}", inst.girth(), 2 * d + 1)));
        }
        let (g, lists) = (inst.graph, inst.lists.lists());
        if g.is_tree() {
            return Ok(outcome("extremal-girth/tree", solve_tree_sets(g, lists)?, SolverStats::default()));
        }
        moore_regularity(g).map_err(|note| violation(self.name(), note))?;
        if g.is_cycle() {
            return Ok(outcome("extremal-girth/cycle", solve_cycle_sets(g, lists)?, SolverStats::default()));
        }
        if g.is_complete() {
            let answer = match list_colour_complete(lists) {
                Some(colours) => crate::colouring::Answer::Sat(Colouring::from_total(colours)),
                None => crate::colouring::Answer::Unsat,
            };
            return Ok(outcome("extremal-girth/complete", answer, SolverStats::default()));
        }
        let (answer, exact) = exact_solve_sets(g, lists, cfg.node_budget)?;
        let stats = SolverStats {
            exact_nodes: exact.nodes,
            fallback: Some(format!("exhaustive search on a Moore graph with {} vertices", g.n())),
            ..SolverStats::default()
        };
        Ok(outcome("extremal-girth/moore", answer, stats))
    }
}

fn girth_at_least(girth: Distance, bound: usize) -> bool {
    girth.finite().is_none_or(|g| g >= bound)
}

/// Checks that a connected non-tree whose girth is at least twice its
/// diameter plus one is regular, and returns the degree.
pub fn moore_regularity(g: &Graph) -> Result<usize, String> {
    let d = metric::diameter(g).finite().ok_or("graph is disconnected")?;
    let girth = metric::girth(g).finite().ok_or("graph is a forest")?;
    if girth < 2 * d + 1 {
        return Err(format!("girth {girth} is below 2 * {d} + 1"));
    }
    g.is_regular()
        .ok_or_else(|| format!("diameter {d} and girth {girth} but degrees differ"))
}

/// List colouring of a clique: a matching of vertices into distinct colours.
pub fn list_colour_complete(lists: &[ColourSet]) -> Option<Vec<Colour>> {
    if lists.len() > MAX_COLOUR as usize {
        return None;
    }
    let mut owner: [Option<usize>; MAX_COLOUR as usize + 1] = [None; MAX_COLOUR as usize + 1];
    for v in 0..lists.len() {
        let mut seen = 0u64;
        if !augment(v, lists, &mut owner, &mut seen) {
            return None;
        }
    }
    let mut colours = vec![0; lists.len()];
    for (c, o) in owner.iter().enumerate() {
        if let Some(v) = o {
            colours[*v] = c as Colour;
        }
    }
    Some(colours)
}

fn augment(v: usize, lists: &[ColourSet], owner: &mut [Option<usize>], seen: &mut u64) -> bool {
    for c in lists[v].iter() {
        let bit = 1u64 << (c - 1);
        if *seen & bit != 0 {
            continue;
        }
        *seen |= bit;
        let free = match owner[c as usize] {
            None => true,
            Some(w) => augment(w, lists, owner, seen),
        };
        if free {
            owner[c as usize] = Some(v);
            return true;
        }
    }
    false
}
