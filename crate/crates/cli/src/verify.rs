use std::thread;
use std::time::Instant;

use anyhow::{bail, Result};
use clap::Args;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use diamchrome::colouring::{solve_two_list, ColourSet};
use diamchrome::gadgets::{
    add_dominating_vertex, certify_dominating, certify_expansion, certify_nae, certify_spread, claw_free_spread,
    expand_diameter_girth, nae3sat_to_graph, GadgetCertificate, OracleOptions,
};
use diamchrome::graph::named;
use diamchrome::harness::{
    expansion_bases, figure_corpus, list3_corpus, nae_formulas, oracle_check, random_connected_graph,
    random_line_graph, random_list3, random_tree, random_two_list_instance, OracleTally,
};
use diamchrome::io::write_graph;
use diamchrome::solvers::{SolverConfig, SolverRegistry};
use diamchrome::{Graph, ListAssignment};

use crate::{json, BudgetArg, Format, Status};

const GADGETS: &[&str] = &["gadget-nae", "gadget-gprime", "gadget-spread", "gadget-dominate"];

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// A solver name or unique prefix, a gadget (gadget-nae, gadget-gprime,
    /// gadget-spread, gadget-dominate), or `all`.
    #[arg(long, default_value = "all")]
    pub class: String,
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    /// Random instances per class.
    #[arg(long, default_value_t = 2000)]
    pub count: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Formula size for gadget-nae.
    #[arg(long, default_value_t = 3)]
    pub vars_max: usize,
    #[arg(long, default_value_t = 3)]
    pub clauses_max: usize,
    /// Path parameter for gadget-gprime.
    #[arg(long, default_value_t = 1)]
    pub p: usize,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub threads: Option<usize>,
    #[command(flatten)]
    pub budget: BudgetArg,
}

#[derive(Serialize)]
struct ClassResult {
    class: String,
    checked: usize,
    passed: usize,
    failed: usize,
    /// The first failing instance, verbatim.
    counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleTally>,
}

#[derive(Serialize)]
struct VerifyReport {
    seed: u64,
    classes: Vec<ClassResult>,
}

/// Splits `items` into contiguous shards and maps each on its own thread;
/// results come back in shard order.
fn sharded<T: Sync, R: Send>(items: &[T], threads: usize, f: impl Fn(&[T]) -> R + Sync) -> Vec<R> {
    if items.is_empty() {
        return vec![f(items)];
    }
    let size = items.len().div_ceil(threads.max(1));
    thread::scope(|scope| {
        let handles: Vec<_> = items.chunks(size).map(|chunk| scope.spawn(|| f(chunk))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn resolve_class(registry: &SolverRegistry, class: &str) -> Result<Vec<String>> {
    if class == "all" {
        let mut all: Vec<String> = registry.names().filter(|&n| n != "exact").map(String::from).collect();
        all.extend(GADGETS.iter().map(|g| g.to_string()));
        return Ok(all);
    }
    if GADGETS.contains(&class) || registry.get(class).is_some() {
        return Ok(vec![class.to_string()]);
    }
    let matches: Vec<&str> = registry.names().filter(|n| n.starts_with(class)).collect();
    match matches.as_slice() {
        [one] => Ok(vec![one.to_string()]),
        [] => bail!(
            "unknown class `{class}`; solvers: {}; gadgets: {}",
            registry.names().collect::<Vec<_>>().join(", "),
            GADGETS.join(", ")
        ),
        many => bail!("`{class}` is ambiguous: {}", many.join(", ")),
    }
}

/// Instances suited to a solver: 2-list lists for `two-list`, trees and
/// cycles for the dynamic programs, list-3 graphs otherwise.
fn solver_corpus(solver: &str, args: &VerifyArgs) -> Vec<(Graph, ListAssignment)> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let n_max = args.n_max.max(1);
    match solver {
        "two-list" => (0..args.count).map(|_| random_two_list_instance(&mut rng, n_max)).collect(),
        "tree" | "cycle" => (0..args.count)
            .map(|_| {
                let n = rng.gen_range(if solver == "cycle" { 3.min(n_max)..=n_max } else { 1..=n_max });
                let g = if solver == "cycle" && n >= 3 { named::cycle(n) } else { random_tree(&mut rng, n) };
                let lists = random_list3(&mut rng, n);
                (g, lists)
            })
            .collect(),
        _ => {
            let mut corpus = list3_corpus(args.seed, args.count, n_max);
            corpus.extend(figure_corpus());
            corpus
        }
    }
}

fn verify_solver(registry: &SolverRegistry, solver: &str, args: &VerifyArgs, threads: usize) -> Result<ClassResult> {
    let cfg = SolverConfig { node_budget: args.budget.resolve()?, ..SolverConfig::default() };
    let corpus = solver_corpus(solver, args);
    let shards = sharded(&corpus, threads, |chunk| oracle_check(registry, solver, chunk, &cfg));
    let mut tally = OracleTally { solver: solver.to_string(), ..OracleTally::default() };
    for shard in shards {
        tally.merge(shard?);
    }
    Ok(ClassResult {
        class: solver.to_string(),
        checked: tally.admitted,
        passed: tally.admitted - tally.failures().min(tally.admitted),
        failed: tally.failures(),
        counterexample: tally.counterexample.clone(),
        oracle: Some(tally),
    })
}

/// Runs a certifier over every item; the described item of the first
/// failure is kept.
fn verify_gadget<T: Sync>(
    class: &str,
    items: &[T],
    threads: usize,
    check: impl Fn(&T) -> Result<GadgetCertificate, String> + Sync,
    describe: impl Fn(&T) -> String + Sync,
) -> ClassResult {
    let shards = sharded(items, threads, |chunk| {
        let mut failed = 0;
        let mut first = None;
        for item in chunk {
            let problem = match check(item) {
                Ok(cert) if cert.passed && cert.equivalence.is_some() => None,
                Ok(cert) if cert.passed => Some("oracle over budget".to_string()),
                Ok(cert) => Some(serde_json::to_string_pretty(&cert).expect("certificates serialize")),
                Err(e) => Some(e),
            };
            if let Some(p) = problem {
                failed += 1;
                first.get_or_insert_with(|| format!("{}\n{p}", describe(item)));
            }
        }
        (failed, first)
    });
    let mut failed = 0;
    let mut counterexample = None;
    for (f, c) in shards {
        failed += f;
        if counterexample.is_none() {
            counterexample = c;
        }
    }
    ClassResult {
        class: class.to_string(),
        checked: items.len(),
        passed: items.len() - failed,
        failed,
        counterexample,
        oracle: None,
    }
}

fn verify_gadget_class(class: &str, args: &VerifyArgs, threads: usize) -> Result<ClassResult> {
    let opts = OracleOptions { enabled: true, node_budget: args.budget.resolve()? };
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    Ok(match class {
        "gadget-nae" => {
            let formulas = nae_formulas(args.vars_max, args.clauses_max);
            verify_gadget(
                class,
                &formulas,
                threads,
                |f| Ok(certify_nae(f, &nae3sat_to_graph(f), opts)),
                |f| format!("# formula {f}\n{}", f.to_dimacs()),
            )
        }
        "gadget-gprime" => {
            let bases = expansion_bases(args.seed, args.count, args.n_max.max(5));
            let p = args.p;
            verify_gadget(
                class,
                &bases,
                threads,
                |b| {
                    let (g, _) = expand_diameter_girth(b, p).map_err(|e| e.to_string())?;
                    Ok(certify_expansion(b, &g, p, opts))
                },
                |b| format!("# base graph\n{}", write_graph(b)),
            )
        }
        "gadget-spread" => {
            let bases: Vec<Graph> = (0..args.count).map(|_| random_line_graph(&mut rng, args.n_max.max(2))).collect();
            verify_gadget(
                class,
                &bases,
                threads,
                |b| {
                    let (g, _) = claw_free_spread(b).map_err(|e| e.to_string())?;
                    Ok(certify_spread(b, &g, opts))
                },
                |b| format!("# base graph\n{}", write_graph(b)),
            )
        }
        "gadget-dominate" => {
            let bases: Vec<Graph> = (0..args.count)
                .map(|_| {
                    let n = rng.gen_range(1..=args.n_max.max(1));
                    let density = rng.gen_range(0.1..0.9);
                    random_connected_graph(&mut rng, n, density)
                })
                .collect();
            verify_gadget(
                class,
                &bases,
                threads,
                |b| Ok(certify_dominating(b, &add_dominating_vertex(b), 3, opts)),
                |b| format!("# base graph\n{}", write_graph(b)),
            )
        }
        _ => unreachable!("gadget classes are resolved first"),
    })
}

pub fn verify(args: &VerifyArgs, format: Format) -> Result<Status> {
    let registry = SolverRegistry::default();
    let threads = args.threads.unwrap_or_else(|| thread::available_parallelism().map_or(1, |n| n.get())).max(1);
    let mut classes = Vec::new();
    for class in resolve_class(&registry, &args.class)? {
        classes.push(if GADGETS.contains(&class.as_str()) {
            verify_gadget_class(&class, args, threads)?
        } else {
            verify_solver(&registry, &class, args, threads)?
        });
    }
    let report = VerifyReport { seed: args.seed, classes };
    let ok = report.classes.iter().all(|c| c.failed == 0);
    match format {
        Format::Json => println!("{}", json("verify", &report)),
        Format::Text => {
            for c in &report.classes {
                let mark = if c.failed == 0 { "pass" } else { "FAIL" };
                print!("{mark} {}: {}/{} passed", c.class, c.passed, c.checked);
                if let Some(t) = &c.oracle {
                    print!(" (sat {}, unsat {}, fallbacks {})", t.sat, t.unsat, t.fallbacks);
                }
                println!();
                if let Some(x) = &c.counterexample {
                    println!("counterexample:\n{x}");
                }
            }
        }
    }
    Ok(if ok { Status::Positive } else { Status::Negative })
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Path lengths for the 2-list timing.
    #[arg(long, value_delimiter = ',', default_value = "100000,200000")]
    pub sizes: Vec<usize>,
    /// Timed repetitions; the minimum is reported.
    #[arg(long, default_value_t = 5)]
    pub runs: usize,
    /// Corpus size for the per-solver timing.
    #[arg(long, default_value_t = 500)]
    pub count: usize,
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
}

#[derive(Serialize)]
struct PathTiming {
    n: usize,
    seconds: f64,
    ns_per_vertex: f64,
}

#[derive(Serialize)]
struct SolverTiming {
    solver: &'static str,
    admitted: usize,
    mean_micros: f64,
}

#[derive(Serialize)]
struct BenchReport {
    two_list_paths: Vec<PathTiming>,
    solvers: Vec<SolverTiming>,
}

fn path_timing(n: usize, runs: usize) -> Result<PathTiming> {
    let lists = (0..n)
        .map(|v| ColourSet::try_from_colours([1 + (v % 3) as u32, 1 + ((v + 1) % 3) as u32]))
        .collect::<Result<Vec<_>, _>>()?;
    let lists = ListAssignment::new(lists, Some(3))?;
    let g = named::path(n);
    let mut best = f64::INFINITY;
    for _ in 0..runs.max(1) {
        let start = Instant::now();
        solve_two_list(&g, &lists)?;
        best = best.min(start.elapsed().as_secs_f64());
    }
    Ok(PathTiming { n, seconds: best, ns_per_vertex: best * 1e9 / n.max(1) as f64 })
}

pub fn bench(args: &BenchArgs, format: Format) -> Result<Status> {
    let two_list_paths = args.sizes.iter().map(|&n| path_timing(n, args.runs)).collect::<Result<Vec<_>>>()?;
    let registry = SolverRegistry::default();
    let corpus = list3_corpus(args.seed, args.count, args.n_max.max(1));
    let cfg = SolverConfig::default();
    let mut solvers = Vec::new();
    for solver in registry.iter() {
        let mut admitted = 0;
        let mut total = 0.0;
        for (g, lists) in &corpus {
            let inst = diamchrome::solvers::Instance::new(g, lists)?;
            if !solver.admits(&inst, &cfg) {
                continue;
            }
            let start = Instant::now();
            let _ = registry.run(solver.name(), g, lists, &cfg);
            total += start.elapsed().as_secs_f64();
            admitted += 1;
        }
        let mean_micros = if admitted == 0 { 0.0 } else { total * 1e6 / admitted as f64 };
        solvers.push(SolverTiming { solver: solver.name(), admitted, mean_micros });
    }
    let report = BenchReport { two_list_paths, solvers };
    match format {
        Format::Json => println!("{}", json("bench", &report)),
        Format::Text => {
            for t in &report.two_list_paths {
                println!("two-list path n={}: {:.3} ms ({:.1} ns/vertex)", t.n, t.seconds * 1e3, t.ns_per_vertex);
            }
            for pair in report.two_list_paths.windows(2) {
                println!(
                    "growth {} -> {}: {:.2}x time for {:.2}x size",
                    pair[0].n,
                    pair[1].n,
                    pair[1].seconds / pair[0].seconds,
                    pair[1].n as f64 / pair[0].n as f64
                );
            }
            for s in &report.solvers {
                println!("{:<32} {:>6} admitted, mean {:.1} us", s.solver, s.admitted, s.mean_micros);
            }
        }
    }
    Ok(Status::Positive)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_names_resolve_by_prefix() {
        let registry = SolverRegistry::default();
        assert_eq!(resolve_class(&registry, "quasi-claw-free").unwrap(), vec!["quasi-claw-free-diam2"]);
        assert_eq!(resolve_class(&registry, "gadget-nae").unwrap(), vec!["gadget-nae"]);
        assert!(resolve_class(&registry, "c").is_err());
        assert!(resolve_class(&registry, "zzz").is_err());
        let all = resolve_class(&registry, "all").unwrap();
        assert!(!all.iter().any(|c| c == "exact"));
        assert_eq!(all.len(), registry.names().count() - 1 + GADGETS.len());
    }

    #[test]
    fn shards_keep_order() {
        let items: Vec<usize> = (0..10).collect();
        for threads in 1..=4 {
            let sums: Vec<Vec<usize>> = sharded(&items, threads, |c| c.to_vec());
            assert_eq!(sums.concat(), items);
        }
        assert_eq!(sharded(&[] as &[usize], 3, |c| c.len()), vec![0]);
    }
}
