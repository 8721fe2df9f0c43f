//! Acceptance suite: one PASS/FAIL line per criterion. Run with
//! `cargo test -p diamchrome --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use diamchrome::colouring::{exact_solve, solve_two_list, ColourSet};
use diamchrome::gadgets::{
    certify_expansion, certify_nae, certify_spread, claw_free_spread, expand_diameter_girth, nae3sat_to_graph,
    CnfFormula, OracleOptions,
};
use diamchrome::graph::named;
use diamchrome::harness::{
    expansion_bases, figure_corpus, list3_corpus, nae_formulas, oracle_check, random_connected_graph,
    random_line_graph, random_two_list_instance, OracleTally,
};
use diamchrome::metric;
use diamchrome::solvers::{moore_regularity, SolverConfig, SolverRegistry};
use diamchrome::{Graph, ListAssignment};

const SEED: u64 = 0x5eed;
const ORACLE_GRAPHS: usize = 5_000;
const ORACLE_N_MAX: usize = 8;
const TWO_LIST_INSTANCES: usize = 10_000;
const PATH_SMALL: usize = 100_000;
/// Allowed growth of `T(2n) / T(n)` over the linear ratio of 2.
const LINEAR_GROWTH_TOLERANCE: f64 = 1.5;
const TIMING_RUNS: usize = 15;
const EXPANSION_BASES: usize = 200;
const EXPANSION_N_MAX: usize = 12;
const NAE_MAX_VARS: usize = 3;
const NAE_MAX_CLAUSES: usize = 3;
const LINE_GRAPHS: usize = 100;
const LINE_GRAPH_N_MAX: usize = 12;
const LEMMA_GRAPHS: usize = 1_000;
const ALMOST_N_MAX: usize = 10;
const ALMOST_GRAPHS: usize = 2_000;

struct Line {
    id: u8,
    title: &'static str,
    pass: bool,
    detail: String,
}

impl Line {
    fn print(&self) {
        let mark = if self.pass { "PASS" } else { "FAIL" };
        println!("[{mark}] {}. {}: {}", self.id, self.title, self.detail);
    }
}

fn solver_names(registry: &SolverRegistry) -> Vec<&'static str> {
    registry.names().filter(|&n| n != "exact").collect()
}

fn summarise(tallies: &[OracleTally]) -> String {
    tallies
        .iter()
        .map(|t| format!("{}={}/{}", t.solver, t.admitted - t.failures().min(t.admitted), t.admitted))
        .collect::<Vec<_>>()
        .join(" ")
}

fn criterion_one(registry: &SolverRegistry, corpus: &[(Graph, ListAssignment)]) -> (Line, Vec<OracleTally>) {
    let cfg = SolverConfig::default();
    let tallies: Vec<OracleTally> = solver_names(registry)
        .into_iter()
        .map(|name| oracle_check(registry, name, corpus, &cfg).expect("registered solver"))
        .collect();
    let failures: usize = tallies.iter().map(|t| t.failures()).sum();
    for t in tallies.iter().filter(|t| !t.passed()) {
        println!("  counterexample for {}:\n{}", t.solver, t.counterexample.as_deref().unwrap_or(""));
    }
    let line = Line {
        id: 1,
        title: "oracle equivalence per solver",
        pass: failures == 0 && tallies.iter().all(|t| t.admitted > 0),
        detail: format!("{} instances, {failures} failures; {}", corpus.len(), summarise(&tallies)),
    };
    (line, tallies)
}

fn path_instance(n: usize) -> (Graph, ListAssignment) {
    let lists = (0..n)
        .map(|v| ColourSet::try_from_colours([1 + (v % 3) as u32, 1 + ((v + 1) % 3) as u32]).unwrap())
        .collect();
    (named::path(n), ListAssignment::new(lists, Some(3)).unwrap())
}

fn time_once(g: &Graph, lists: &ListAssignment) -> Duration {
    let start = Instant::now();
    let answer = solve_two_list(g, lists).unwrap();
    let elapsed = start.elapsed();
    assert!(answer.is_sat());
    elapsed
}

/// Best-of-`TIMING_RUNS` solve times for paths of `n` and `2n` vertices,
/// with the two sizes interleaved after a warm-up.
fn time_paths(n: usize) -> (Duration, Duration) {
    let small = path_instance(n);
    let large = path_instance(2 * n);
    time_once(&large.0, &large.1);
    let mut best = (Duration::MAX, Duration::MAX);
    for _ in 0..TIMING_RUNS {
        best.0 = best.0.min(time_once(&small.0, &small.1));
        best.1 = best.1.min(time_once(&large.0, &large.1));
    }
    best
}

fn criterion_two() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    let mut mismatches = 0;
    for _ in 0..TWO_LIST_INSTANCES {
        let (g, lists) = random_two_list_instance(&mut rng, 8);
        let fast = solve_two_list(&g, &lists).unwrap();
        let oracle = exact_solve(&g, &lists).unwrap();
        if fast.is_sat() != oracle.is_sat() {
            mismatches += 1;
        }
        if let Some(c) = fast.colouring() {
            if diamchrome::colouring::validate(&g, &lists, c).is_err() {
                mismatches += 1;
            }
        }
    }
    let (small, large) = time_paths(PATH_SMALL);
    let growth = large.as_secs_f64() / small.as_secs_f64() / 2.0;
    Line {
        id: 2,
        title: "2-list solver",
        pass: mismatches == 0 && growth <= LINEAR_GROWTH_TOLERANCE,
        detail: format!(
            "{TWO_LIST_INSTANCES} instances, {mismatches} mismatches; path {PATH_SMALL}: {small:?}, path {}: {large:?}, growth over linear {growth:.2} (tolerance {LINEAR_GROWTH_TOLERANCE})",
            2 * PATH_SMALL
        ),
    }
}

/// Outcome of criterion three, with the failures split by cause.
struct ExpansionResult {
    line: Line,
    /// Failures on bases other than a `C5`, or of any claim but girth.
    unexpected: Vec<String>,
    c5_girth_failures: usize,
    fig3_ok: bool,
}

fn criterion_three() -> ExpansionResult {
    let bases = expansion_bases(SEED ^ 3, EXPANSION_BASES, EXPANSION_N_MAX);
    let mut unexpected = Vec::new();
    let mut c5_girth_failures = 0;
    for (i, base) in bases.iter().enumerate() {
        let (g, _) = match expand_diameter_girth(base, 1) {
            Ok(out) => out,
            Err(e) => {
                unexpected.push(format!("base {i}: {e}"));
                continue;
            }
        };
        let cert = certify_expansion(base, &g, 1, OracleOptions::default());
        let diameter_ok = cert.diameter.as_ref().is_some_and(|c| c.ok);
        let girth_ok = cert.girth.as_ref().is_some_and(|c| c.ok);
        let equivalent = cert.equivalence.as_ref().is_some_and(|e| e.ok);
        if !girth_ok && base.is_cycle() && base.n() == 5 && diameter_ok && equivalent {
            c5_girth_failures += 1;
        } else if !cert.passed {
            unexpected.push(format!("base {i} ({} vertices): {cert:?}", base.n()));
        }
    }
    let (fig3, _) = expand_diameter_girth(&named::path(4), 1).unwrap();
    let fig3_ok = (fig3.n(), fig3.m()) == (11, 13);
    let failures = unexpected.len() + c5_girth_failures;
    let line = Line {
        id: 3,
        title: "diameter-girth expansion, p = 1",
        pass: failures == 0 && fig3_ok,
        detail: format!(
            "{EXPANSION_BASES} bases, {failures} failures ({c5_girth_failures} are C5 bases whose girth 5 survives, below the claimed 6); P4 expansion has {} vertices, {} edges",
            fig3.n(),
            fig3.m()
        ),
    };
    ExpansionResult { line, unexpected, c5_girth_failures, fig3_ok }
}

fn criterion_four() -> Line {
    let formulas = nae_formulas(NAE_MAX_VARS, NAE_MAX_CLAUSES);
    let mut failures = 0;
    let mut first = None;
    for f in &formulas {
        let cert = certify_nae(f, &nae3sat_to_graph(f), OracleOptions::default());
        if !cert.passed || cert.equivalence.is_none() {
            failures += 1;
            first.get_or_insert_with(|| format!("{f}: {cert:?}"));
        }
    }
    let fig5 = CnfFormula::new(4, vec![[1, 2, 3], [3, -3, 4]]).unwrap();
    let g = nae3sat_to_graph(&fig5);
    let fig5_ok = (g.n(), g.m()) == (15, 24);
    if let Some(f) = first {
        println!("  first NAE failure: {f}");
    }
    Line {
        id: 4,
        title: "NAE gadget",
        pass: failures == 0 && fig5_ok,
        detail: format!(
            "{} formulas, {failures} failures; two-clause example has {} vertices, {} edges",
            formulas.len(),
            g.n(),
            g.m()
        ),
    }
}

fn criterion_five() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let mut failures = 0;
    for _ in 0..LINE_GRAPHS {
        let base = random_line_graph(&mut rng, LINE_GRAPH_N_MAX);
        match claw_free_spread(&base) {
            Ok((g, _)) => {
                let cert = certify_spread(&base, &g, OracleOptions::default());
                if !cert.passed || cert.equivalence.is_none() {
                    failures += 1;
                    println!("  spread failure: {cert:?}");
                }
            }
            Err(e) => {
                failures += 1;
                println!("  spread precondition: {e}");
            }
        }
    }
    Line {
        id: 5,
        title: "claw-free spread",
        pass: failures == 0,
        detail: format!("{LINE_GRAPHS} line graphs, {failures} failures"),
    }
}

fn criterion_six(registry: &SolverRegistry) -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let mut lemma_failures = 0;
    let mut non_trees = 0;
    for _ in 0..LEMMA_GRAPHS {
        let n = rng.gen_range(1..=12);
        let density = rng.gen_range(0.0..0.6);
        let g = random_connected_graph(&mut rng, n, density);
        if g.is_tree() {
            continue;
        }
        non_trees += 1;
        let d = metric::diameter(&g).finite().unwrap();
        if !metric::girth(&g).at_most(2 * d + 1) {
            lemma_failures += 1;
        }
    }
    let moore = moore_regularity(&named::cycle(5)) == Ok(2) && moore_regularity(&named::petersen()) == Ok(3);
    let corpus = list3_corpus(SEED ^ 66, ALMOST_GRAPHS, ALMOST_N_MAX);
    let tally = oracle_check(registry, "almost-k1r-free", &corpus, &SolverConfig::default()).unwrap();
    Line {
        id: 6,
        title: "structural lemmas",
        pass: lemma_failures == 0 && moore && tally.passed() && tally.unsat > 0,
        detail: format!(
            "girth <= 2d+1 on {non_trees} non-trees, {lemma_failures} failures; Moore regularity on C5 and Petersen: {moore}; almost-K1,r-free: {} admitted, {} unsat all confirmed by oracle, {} failures",
            tally.admitted,
            tally.unsat,
            tally.failures()
        ),
    }
}

fn criterion_seven(tallies: &[OracleTally]) -> Line {
    let breaches: usize = tallies.iter().map(|t| t.bound_breaches).sum();
    let detail = tallies
        .iter()
        .filter(|t| t.max_outer_branches > 0)
        .map(|t| format!("{} max {}", t.solver, t.max_outer_branches))
        .collect::<Vec<_>>()
        .join(", ");
    Line {
        id: 7,
        title: "enumeration bounds",
        pass: breaches == 0,
        detail: format!("{breaches} breaches; outer branches: {detail}"),
    }
}

fn main() {
    let registry = SolverRegistry::default();
    let mut corpus = list3_corpus(SEED, ORACLE_GRAPHS, ORACLE_N_MAX);
    corpus.extend(figure_corpus());

    println!();
    let (one, tallies) = criterion_one(&registry, &corpus);
    one.print();
    let two = criterion_two();
    two.print();
    let three = criterion_three();
    three.line.print();
    let four = criterion_four();
    four.print();
    let five = criterion_five();
    five.print();
    let six = criterion_six(&registry);
    six.print();
    let seven = criterion_seven(&tallies);
    seven.print();

    assert!(one.pass, "{}", one.detail);
    assert!(two.pass, "{}", two.detail);
    // Criterion 3 cannot pass for C5 bases at p = 1: the base cycle is kept
    // and 5 < 4p + 2. Everything else about the expansion must hold.
    assert!(three.unexpected.is_empty(), "{:#?}", three.unexpected);
    assert!(three.c5_girth_failures > 0);
    assert!(three.fig3_ok);
    assert!(four.pass, "{}", four.detail);
    assert!(five.pass, "{}", five.detail);
    assert!(six.pass, "{}", six.detail);
    assert!(seven.pass, "{}", seven.detail);
}
