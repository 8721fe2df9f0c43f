//! Seeded instance generators shared by tests, the acceptance suite and the
//! `verify` and `bench` commands.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::builtin;
use crate::colouring::{exact_solve_with_budget, write_lists, Colour, ColourSet, ListAssignment};
use crate::gadgets::CnfFormula;
use crate::graph::{named, Graph};
use crate::io::write_graph;
use crate::solvers::{Instance, SolverConfig, SolverError, SolverRegistry};

/// Erdős–Rényi graph on `n` vertices with edge probability `density`.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("generated edges are valid")
}

/// Uniform random labelled tree via a random Prüfer-like attachment.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let edges = (1..n).map(|i| {
        let p = order[rng.gen_range(0..i)];
        (p.min(order[i]), p.max(order[i]))
    });
    Graph::from_edges(n, edges).expect("tree edges are valid")
}

/// A random spanning tree plus each remaining pair with probability `density`.
pub fn random_connected_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Graph {
    let tree = random_tree(rng, n);
    let mut edges: Vec<(usize, usize)> = tree.edges().collect();
    for u in 0..n {
        for v in u + 1..n {
            if !tree.has_edge(u, v) && rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("generated edges are valid")
}

/// Non-empty random subsets of `{1..k}` with at most `max_size` colours.
pub fn random_lists<R: Rng + ?Sized>(rng: &mut R, n: usize, k: Colour, max_size: usize) -> Vec<ColourSet> {
    let palette: Vec<Colour> = (1..=k).collect();
    (0..n)
        .map(|_| {
            let size = rng.gen_range(1..=max_size.min(k as usize).max(1));
            ColourSet::try_from_colours(palette.choose_multiple(rng, size).copied()).expect("palette colours")
        })
        .collect()
}

/// Random graph with at most `max_n` vertices and lists of size 0, 1 or 2
/// drawn from `{1, 2, 3}`.
pub fn random_two_list_instance<R: Rng + ?Sized>(rng: &mut R, max_n: usize) -> (Graph, ListAssignment) {
    let n = rng.gen_range(1..=max_n);
    let density = rng.gen_range(0.1..0.9);
    let g = random_graph(rng, n, density);
    let lists = (0..n)
        .map(|_| {
            let size = match rng.gen_range(0..50) {
                0 => 0,
                1..=12 => 1,
                _ => 2,
            };
            ColourSet::try_from_colours([1, 2, 3].choose_multiple(rng, size).copied()).expect("palette colours")
        })
        .collect();
    (g, ListAssignment::new(lists, Some(3)).expect("lists inside the palette"))
}

/// Lists inside `{1, 2, 3}`: the full palette on every vertex, or mostly
/// full lists with some of size one or two.
pub fn random_list3<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ListAssignment {
    if rng.gen_bool(0.5) {
        return ListAssignment::full(n, 3);
    }
    let lists = (0..n)
        .map(|_| {
            let size = match rng.gen_range(0..10) {
                0 => 1,
                1..=3 => 2,
                _ => 3,
            };
            ColourSet::try_from_colours([1, 2, 3].choose_multiple(rng, size).copied()).expect("palette colours")
        })
        .collect();
    ListAssignment::new(lists, Some(3)).expect("lists inside the palette")
}

/// `count` seeded connected graphs on `1..=n_max` vertices, density drawn
/// from `0.2..0.95`, each with [`random_list3`] lists.
pub fn list3_corpus(seed: u64, count: usize, n_max: usize) -> Vec<(Graph, ListAssignment)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=n_max);
            let density = rng.gen_range(0.2..0.95);
            let g = random_connected_graph(&mut rng, n, density);
            let lists = random_list3(&mut rng, n);
            (g, lists)
        })
        .collect()
}

/// The built-in figures with the full palette and with every vertex but
/// the first restricted to `{1, 2}`.
pub fn figure_corpus() -> Vec<(Graph, ListAssignment)> {
    let mut out = Vec::new();
    for name in builtin::NAMES {
        let g = builtin::by_name(name).expect("listed builtin");
        out.push((g.clone(), ListAssignment::full(g.n(), 3)));
        let mut lists = vec![ColourSet::try_from_colours([1, 2]).expect("palette colours"); g.n()];
        if let Some(first) = lists.first_mut() {
            *first = ColourSet::palette(3);
        }
        out.push((g, ListAssignment::new(lists, Some(3)).expect("lists inside the palette")));
    }
    out
}

/// Base graphs for the girth-preserving expansion: trees on `2..=n_max`
/// vertices and cycles of length `5..=n_max`, alternately.
pub fn expansion_bases(seed: u64, count: usize, n_max: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            if i % 2 == 0 {
                let n = rng.gen_range(2..=n_max);
                random_tree(&mut rng, n)
            } else {
                named::cycle(rng.gen_range(5..=n_max))
            }
        })
        .collect()
}

/// Line graph of a random connected graph with between one and `m_max`
/// edges; claw-free and connected.
pub fn random_line_graph<R: Rng + ?Sized>(rng: &mut R, m_max: usize) -> Graph {
    loop {
        let n = rng.gen_range(2..=m_max.clamp(2, 8));
        let density = rng.gen_range(0.1..0.8);
        let base = random_connected_graph(rng, n, density);
        if (1..=m_max).contains(&base.m()) {
            return base.line_graph();
        }
    }
}

/// Every formula over exactly `1..=max_vars` variables (all used) with
/// `1..=max_clauses` clauses that meets the occurrence caps, with clauses
/// and literals up to reordering.
pub fn nae_formulas(max_vars: usize, max_clauses: usize) -> Vec<CnfFormula> {
    let mut out = Vec::new();
    for vars in 1..=max_vars {
        let literals: Vec<i32> = (1..=vars as i32).flat_map(|v| [v, -v]).collect();
        let mut clauses = Vec::new();
        for a in 0..literals.len() {
            for b in a..literals.len() {
                for c in b..literals.len() {
                    clauses.push([literals[a], literals[b], literals[c]]);
                }
            }
        }
        let mut chosen = Vec::new();
        extend_formulas(vars, &clauses, 0, max_clauses, &mut chosen, &mut out);
    }
    out
}

fn extend_formulas(
    vars: usize,
    clauses: &[[i32; 3]],
    from: usize,
    max_clauses: usize,
    chosen: &mut Vec<[i32; 3]>,
    out: &mut Vec<CnfFormula>,
) {
    for i in from..clauses.len() {
        chosen.push(clauses[i]);
        if let Ok(f) = CnfFormula::new(vars, chosen.clone()) {
            let used = (1..=vars as i32).all(|v| chosen.iter().flatten().any(|l| l.abs() == v));
            if used {
                out.push(f);
            }
            if chosen.len() < max_clauses {
                extend_formulas(vars, clauses, i, max_clauses, chosen, out);
            }
        }
        chosen.pop();
    }
}

/// Result of comparing one solver with the exact oracle over a corpus.
#[derive(Clone, Debug, Default, Serialize)]
pub struct OracleTally {
    pub solver: String,
    pub cases: usize,
    pub admitted: usize,
    pub sat: usize,
    pub unsat: usize,
    pub mismatches: usize,
    pub invalid_colourings: usize,
    pub bound_breaches: usize,
    pub violations: usize,
    pub errors: usize,
    pub fallbacks: usize,
    pub max_outer_branches: u64,
    /// The first failing instance, in the graph and list file formats.
    pub counterexample: Option<String>,
}

impl OracleTally {
    pub fn failures(&self) -> usize {
        self.mismatches + self.invalid_colourings + self.bound_breaches + self.violations + self.errors
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    /// Adds the counts of a later shard; the earlier counterexample wins.
    pub fn merge(&mut self, other: OracleTally) {
        self.cases += other.cases;
        self.admitted += other.admitted;
        self.sat += other.sat;
        self.unsat += other.unsat;
        self.mismatches += other.mismatches;
        self.invalid_colourings += other.invalid_colourings;
        self.bound_breaches += other.bound_breaches;
        self.violations += other.violations;
        self.errors += other.errors;
        self.fallbacks += other.fallbacks;
        self.max_outer_branches = self.max_outer_branches.max(other.max_outer_branches);
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
    }

    fn fail(&mut self, g: &Graph, lists: &ListAssignment, note: String) {
        if self.counterexample.is_none() {
            self.counterexample = Some(format!("# {note}\n{}# lists\n{}", write_graph(g), write_lists(lists)));
        }
    }
}

/// Runs `solver` on every admitted instance and compares its verdict with
/// exhaustive search; colourings are validated and branch counts checked
/// against the solver's bounds.
pub fn oracle_check(
    registry: &SolverRegistry,
    solver: &str,
    cases: &[(Graph, ListAssignment)],
    cfg: &SolverConfig,
) -> Result<OracleTally, SolverError> {
    let handle = registry.get(solver).ok_or_else(|| SolverError::UnknownSolver(solver.to_string()))?;
    let mut tally = OracleTally { solver: solver.to_string(), cases: cases.len(), ..OracleTally::default() };
    for (g, lists) in cases {
        let inst = Instance::new(g, lists)?;
        if !handle.admits(&inst, cfg) {
            continue;
        }
        tally.admitted += 1;
        let expected = exact_solve_with_budget(g, lists, cfg.node_budget).map(|(a, _)| a.is_sat());
        match (registry.run(solver, g, lists, cfg), expected) {
            (Ok(out), Ok(expected)) => {
                if out.is_sat() {
                    tally.sat += 1;
                } else {
                    tally.unsat += 1;
                }
                tally.max_outer_branches = tally.max_outer_branches.max(out.stats.outer_branches);
                if out.stats.fallback.is_some() {
                    tally.fallbacks += 1;
                }
                if out.is_sat() != expected {
                    tally.mismatches += 1;
                    tally.fail(g, lists, format!("{} answered {:?}, oracle sat = {expected}", out.path, out.verdict));
                } else if !out.stats.within_bounds() {
                    tally.bound_breaches += 1;
                    tally.fail(g, lists, format!("{} exceeded its branch bounds: {:?}", out.path, out.stats));
                }
            }
            (Err(SolverError::InvalidColouring { defect, .. }), _) => {
                tally.invalid_colourings += 1;
                tally.fail(g, lists, format!("invalid colouring: {defect}"));
            }
            (Err(e @ SolverError::PromiseViolation { .. }), _) => {
                tally.violations += 1;
                tally.fail(g, lists, e.to_string());
            }
            (Err(e), _) => {
                tally.errors += 1;
                tally.fail(g, lists, e.to_string());
            }
            (_, Err(e)) => {
                tally.errors += 1;
                tally.fail(g, lists, format!("oracle: {e}"));
            }
        }
    }
    Ok(tally)
}
