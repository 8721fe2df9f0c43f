use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

use diamchrome::colouring::{exact_solve_with_budget, Colour, ColouringError};
use diamchrome::gadgets::{
    add_dominating_vertex, certify_dominating, certify_expansion, certify_nae, certify_spread, claw_free_spread,
    expand_diameter_girth, nae3sat_to_graph, GadgetCertificate, OracleOptions,
};
use diamchrome::io::write_graph;
use diamchrome::metric;
use diamchrome::recognition::{is_almost_k1r_free, recognize_all, ClassReport};
use diamchrome::solvers::{DispatchHints, Instance, SolverConfig, SolverError, SolverOutcome, SolverRegistry};
use diamchrome::{Distance, Graph, ListAssignment};

use crate::input::{load_cnf, load_graph, load_lists};
use crate::{json, verify, AnalyzeArgs, Cli, Command, Format, GenerateCommand, GenerateOpts, RecognizeArgs};
use crate::{SolveArgs, Status};

pub fn run(cli: &Cli) -> Result<Status> {
    match &cli.command {
        Command::Solve(args) => solve(args, cli.format),
        Command::Recognize(args) => recognize(args, cli.format),
        Command::Analyze(args) => analyze(args, cli.format),
        Command::Generate(cmd) => generate(cmd, cli.format),
        Command::Verify(args) => verify::verify(args, cli.format),
        Command::Bench(args) => verify::bench(args, cli.format),
        Command::Solvers => solvers(cli.format),
    }
}

fn emit<T: Serialize>(format: Format, command: &str, body: &T, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", json(command, body)),
        Format::Text => print!("{}", text()),
    }
}

#[derive(Serialize)]
struct SolveReport {
    n: usize,
    m: usize,
    k: Colour,
    forced_solver: Option<String>,
    #[serde(flatten)]
    outcome: SolverOutcome,
}

fn solve(args: &SolveArgs, format: Format) -> Result<Status> {
    let g = load_graph(&args.graph.graph)?;
    let lists = load_lists(args.lists.as_deref(), g.n(), args.k)?;
    let hints = DispatchHints {
        solver: args.solver.clone(),
        config: SolverConfig { d: args.d, k: Some(args.k), r: args.r, node_budget: args.budget.resolve()? },
    };
    let outcome = match SolverRegistry::default().dispatch(&g, &lists, &hints) {
        Ok(out) => out,
        Err(SolverError::Colouring(ColouringError::BudgetExceeded(b))) => {
            anyhow::bail!("search budget of {b} nodes exceeded; raise --budget or ${}", crate::BUDGET_ENV)
        }
        Err(e) => return Err(e.into()),
    };
    let status = if outcome.violation.is_some() && args.solver.is_some() {
        Status::Failure
    } else if outcome.is_sat() {
        Status::Positive
    } else {
        Status::Negative
    };
    let report = SolveReport { n: g.n(), m: g.m(), k: args.k, forced_solver: args.solver.clone(), outcome };
    emit(format, "solve", &report, || solve_text(&report));
    Ok(status)
}

fn solve_text(r: &SolveReport) -> String {
    let out = &r.outcome;
    let mut s = format!("verdict: {}\npath: {}\n", if out.is_sat() { "sat" } else { "unsat" }, out.path);
    if let Some(c) = &out.colouring {
        let colours: Vec<String> =
            c.as_slice().iter().map(|x| x.map_or_else(|| "-".to_string(), |c| c.to_string())).collect();
        s.push_str(&format!("colouring: {}\n", colours.join(" ")));
    }
    let st = &out.stats;
    if st.outer_branches > 0 {
        let bound = st.outer_bound.map_or_else(String::new, |b| format!(" of at most {b}"));
        s.push_str(&format!("outer branches: {}{bound}\n", st.outer_branches));
    }
    if st.inner_branches > 0 {
        s.push_str(&format!("inner branches: {}\n", st.inner_branches));
    }
    if st.two_list_calls > 0 {
        s.push_str(&format!("2-list calls: {}\n", st.two_list_calls));
    }
    if st.exact_nodes > 0 {
        s.push_str(&format!("search nodes: {}\n", st.exact_nodes));
    }
    if let Some(f) = &st.fallback {
        s.push_str(&format!("fallback: {f}\n"));
    }
    if let Some(v) = &out.violation {
        s.push_str(&format!("promise violation: {v}\n"));
    }
    s
}

#[derive(Serialize)]
struct RecognizeReport {
    n: usize,
    m: usize,
    diameter: Distance,
    girth: Distance,
    classes: Vec<ClassReport>,
}

fn recognize(args: &RecognizeArgs, format: Format) -> Result<Status> {
    let g = load_graph(&args.graph.graph)?;
    let mut classes = recognize_all(&g);
    if let Some(r) = args.r.filter(|&r| r != 3) {
        classes.push(is_almost_k1r_free(&g, r)?);
    }
    let report =
        RecognizeReport { n: g.n(), m: g.m(), diameter: metric::diameter(&g), girth: metric::girth(&g), classes };
    emit(format, "recognize", &report, || {
        let mut s = format!("diameter: {}\ngirth: {}\n", report.diameter, report.girth);
        for c in &report.classes {
            s.push_str(&format!("{}: {}", c.class, c.member));
            if let (Some(w), Some(kind)) = (&c.witness, &c.witness_kind) {
                s.push_str(&format!(" ({kind}: {w:?})"));
            }
            s.push('\n');
        }
        s
    });
    Ok(Status::Positive)
}

#[derive(Serialize)]
struct AnalyzeReport {
    n: usize,
    m: usize,
    components: usize,
    diameter: Distance,
    girth: Distance,
    max_degree: usize,
    regular: Option<usize>,
    bipartite: bool,
    tree: bool,
    cycle: bool,
    complete: bool,
    shortest_odd_cycle: Option<Vec<usize>>,
    /// `None` when the search budget ran out.
    chromatic_number: Option<usize>,
    k: Colour,
    admitting_solvers: Vec<&'static str>,
    dispatch_path: Option<String>,
}

fn chromatic_within(g: &Graph, budget: u64) -> Option<usize> {
    if g.n() == 0 {
        return Some(0);
    }
    let top = (g.max_degree() + 1).min(64);
    for k in 1..=top {
        match exact_solve_with_budget(g, &ListAssignment::full(g.n(), k as Colour), budget) {
            Ok((answer, _)) if answer.is_sat() => return Some(k),
            Ok(_) => continue,
            Err(_) => return None,
        }
    }
    Some(top)
}

fn analyze(args: &AnalyzeArgs, format: Format) -> Result<Status> {
    let g = load_graph(&args.graph.graph)?;
    let budget = args.budget.resolve()?;
    let lists = ListAssignment::full(g.n(), args.k);
    let cfg = SolverConfig { k: Some(args.k), node_budget: budget, ..SolverConfig::default() };
    let registry = SolverRegistry::default();
    let inst = Instance::new(&g, &lists)?;
    let admitting = registry.iter().filter(|s| s.admits(&inst, &cfg)).map(|s| s.name()).collect();
    let hints = DispatchHints { solver: None, config: cfg };
    let report = AnalyzeReport {
        n: g.n(),
        m: g.m(),
        components: g.components().len(),
        diameter: metric::diameter(&g),
        girth: metric::girth(&g),
        max_degree: g.max_degree(),
        regular: g.is_regular(),
        bipartite: g.is_bipartite(),
        tree: g.is_tree(),
        cycle: g.is_cycle(),
        complete: g.is_complete(),
        shortest_odd_cycle: metric::shortest_odd_cycle(&g),
        chromatic_number: chromatic_within(&g, budget),
        k: args.k,
        admitting_solvers: admitting,
        dispatch_path: registry.dispatch(&g, &lists, &hints).ok().map(|o| o.path),
    };
    emit(format, "analyze", &report, || {
        let opt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
        format!(
            "vertices: {}\nedges: {}\ncomponents: {}\ndiameter: {}\ngirth: {}\nmax degree: {}\nregular: {}\nbipartite: {}\ntree: {}\ncycle: {}\ncomplete: {}\nchromatic number: {}\nsolvers admitting {{1..{}}}: {}\ndispatch path: {}\n",
            report.n,
            report.m,
            report.components,
            report.diameter,
            report.girth,
            report.max_degree,
            opt(report.regular),
            report.bipartite,
            report.tree,
            report.cycle,
            report.complete,
            opt(report.chromatic_number),
            report.k,
            report.admitting_solvers.join(", "),
            report.dispatch_path.as_deref().unwrap_or("-"),
        )
    });
    Ok(Status::Positive)
}

#[derive(Serialize)]
struct GenerateReport {
    gadget: &'static str,
    n: usize,
    m: usize,
    /// The graph in edge-list format, unless written to a file.
    graph: Option<String>,
    output: Option<String>,
    certificate: Option<GadgetCertificate>,
}

fn generate(cmd: &GenerateCommand, format: Format) -> Result<Status> {
    let (name, g, cert, opts): (&'static str, Graph, Option<GadgetCertificate>, &GenerateOpts) = match cmd {
        GenerateCommand::Gprime { graph, p, opts } => {
            let base = load_graph(&graph.graph)?;
            let (g, _) = expand_diameter_girth(&base, *p)?;
            let cert = certify(opts, |o| certify_expansion(&base, &g, *p, o))?;
            ("gprime", g, cert, opts)
        }
        GenerateCommand::Nae { cnf, opts } => {
            let f = load_cnf(cnf)?;
            let g = nae3sat_to_graph(&f);
            let cert = certify(opts, |o| certify_nae(&f, &g, o))?;
            ("nae", g, cert, opts)
        }
        GenerateCommand::Spread { graph, opts } => {
            let base = load_graph(&graph.graph)?;
            let (g, _) = claw_free_spread(&base)?;
            let cert = certify(opts, |o| certify_spread(&base, &g, o))?;
            ("spread", g, cert, opts)
        }
        GenerateCommand::Dominate { graph, k, opts } => {
            let base = load_graph(&graph.graph)?;
            let g = add_dominating_vertex(&base);
            let cert = certify(opts, |o| certify_dominating(&base, &g, *k, o))?;
            ("dominate", g, cert, opts)
        }
    };
    let text = write_graph(&g);
    let output = match &opts.out {
        Some(path) => {
            write_file(path, &text)?;
            let cert_path = sidecar(path);
            if let Some(c) = &cert {
                write_file(Path::new(&cert_path), &(json("certificate", c) + "\n"))?;
            }
            Some(path.display().to_string())
        }
        None => None,
    };
    let passed = cert.as_ref().is_none_or(|c| c.passed);
    let report = GenerateReport {
        gadget: name,
        n: g.n(),
        m: g.m(),
        graph: output.is_none().then(|| text.clone()),
        output,
        certificate: cert,
    };
    match format {
        Format::Json => println!("{}", json("generate", &report)),
        Format::Text => {
            if report.output.is_none() {
                print!("{text}");
            }
            let verdict = match &report.certificate {
                None => "not certified".to_string(),
                Some(c) => format!("certificate {}", if c.passed { "passed" } else { "FAILED" }),
            };
            eprintln!("{name}: {} vertices, {} edges; {verdict}", report.n, report.m);
            if let Some(c) = report.certificate.as_ref().filter(|c| !c.passed) {
                eprintln!("{}", json("certificate", c));
            }
        }
    }
    Ok(if passed { Status::Positive } else { Status::Negative })
}

fn certify(
    opts: &GenerateOpts,
    f: impl FnOnce(OracleOptions) -> GadgetCertificate,
) -> Result<Option<GadgetCertificate>> {
    if opts.no_certify {
        return Ok(None);
    }
    Ok(Some(f(OracleOptions { enabled: true, node_budget: opts.budget.resolve()? })))
}

fn sidecar(path: &Path) -> String {
    format!("{}.cert.json", path.display())
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

#[derive(Serialize)]
struct SolverEntry {
    name: &'static str,
    summary: &'static str,
}

#[derive(Serialize)]
struct SolverList {
    solvers: Vec<SolverEntry>,
}

fn solvers(format: Format) -> Result<Status> {
    let registry = SolverRegistry::default();
    let list = SolverList {
        solvers: registry.iter().map(|s| SolverEntry { name: s.name(), summary: s.summary() }).collect(),
    };
    emit(format, "solvers", &list, || {
        list.solvers.iter().map(|e| format!("{:<32} {}\n", e.name, e.summary)).collect()
    });
    Ok(Status::Positive)
}
