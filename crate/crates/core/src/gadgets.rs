//! Hardness reductions as deterministic graph generators. Each generator
//! has a certifier that measures the properties the reduction promises.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::colouring::{exact_solve_with_budget, ColouringError, ListAssignment, DEFAULT_NODE_BUDGET};
use crate::graph::{Distance, Graph, GraphError};
use crate::metric;
use crate::recognition::{claw_centres_independent, contains_induced, is_locally_claw_free, PolyadSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("malformed formula: {0}")]
    Formula(String),
    #[error("assignment has {found} values, formula has {expected} variables")]
    Assignment { expected: usize, found: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A 3-CNF formula read with not-all-equal semantics. Literal `+i` is
/// variable `i` (1-based), `-i` its negation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CnfFormula {
    vars: usize,
    clauses: Vec<[i32; 3]>,
}

impl CnfFormula {
    /// Checks literal ranges and the occurrence caps: each variable in at
    /// most three clauses, each literal at most twice.
    pub fn new(vars: usize, clauses: Vec<[i32; 3]>) -> Result<Self, GadgetError> {
        let mut clause_count = vec![0usize; vars + 1];
        let mut literal_count = vec![[0usize; 2]; vars + 1];
        for (ci, clause) in clauses.iter().enumerate() {
            let mut seen = Vec::with_capacity(3);
            for &lit in clause {
                let var = lit.unsigned_abs() as usize;
                if lit == 0 || var > vars {
                    return Err(GadgetError::Formula(format!("clause {} has literal {lit} outside 1..={vars}", ci + 1)));
                }
                literal_count[var][(lit < 0) as usize] += 1;
                if !seen.contains(&var) {
                    seen.push(var);
                    clause_count[var] += 1;
                }
            }
        }
        for var in 1..=vars {
            if clause_count[var] > 3 {
                return Err(GadgetError::Formula(format!("variable {var} occurs in {} clauses", clause_count[var])));
            }
            for (sign, &count) in literal_count[var].iter().enumerate() {
                if count > 2 {
                    let lit = if sign == 0 { var as i64 } else { -(var as i64) };
                    return Err(GadgetError::Formula(format!("literal {lit} occurs {count} times")));
                }
            }
        }
        Ok(CnfFormula { vars, clauses })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn clauses(&self) -> &[[i32; 3]] {
        &self.clauses
    }

    /// DIMACS text; clauses may span lines but must have three literals.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.vars, self.clauses.len());
        for c in &self.clauses {
            out.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
        }
        out
    }
}

impl FromStr for CnfFormula {
    type Err = GadgetError;

    fn from_str(text: &str) -> Result<Self, GadgetError> {
        parse_dimacs(text)
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lit = |l: i32| if l > 0 { format!("x{l}") } else { format!("!x{}", -l) };
        let parts: Vec<String> =
            self.clauses.iter().map(|c| format!("({} | {} | {})", lit(c[0]), lit(c[1]), lit(c[2]))).collect();
        write!(f, "{}", parts.join(" & "))
    }
}

/// Parses DIMACS CNF: `c` comment lines, one `p cnf <vars> <clauses>`
/// header, clauses terminated by `0`.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, GadgetError> {
    let err = |line: usize, msg: String| GadgetError::Parse { line, msg };
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('c') || t.starts_with('%') {
            continue;
        }
        if t.starts_with('p') {
            let fields: Vec<&str> = t.split_whitespace().collect();
            if header.is_some() {
                return Err(err(line, "second header".into()));
            }
            if fields.len() != 4 || fields[1] != "cnf" {
                return Err(err(line, "expected `p cnf <vars> <clauses>`".into()));
            }
            let num = |s: &str| s.parse::<usize>().map_err(|_| err(line, format!("bad count `{s}`")));
            header = Some((num(fields[2])?, num(fields[3])?));
            continue;
        }
        if header.is_none() {
            return Err(err(line, "clause before header".into()));
        }
        for tok in t.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| err(line, format!("bad literal `{tok}`")))?;
            if lit != 0 {
                current.push(lit);
                continue;
            }
            let clause: [i32; 3] = current
                .as_slice()
                .try_into()
                .map_err(|_| err(line, format!("clause has {} literals, expected 3", current.len())))?;
            clauses.push(clause);
            current.clear();
        }
    }
    let (vars, count) = header.ok_or_else(|| err(last_line.max(1), "missing header".into()))?;
    if !current.is_empty() {
        return Err(err(last_line, "unterminated clause".into()));
    }
    if clauses.len() != count {
        return Err(err(last_line, format!("header declares {count} clauses, found {}", clauses.len())));
    }
    CnfFormula::new(vars, clauses)
}

/// True iff every clause has a true and a false literal.
pub fn nae_evaluate(f: &CnfFormula, assignment: &[bool]) -> Result<bool, GadgetError> {
    if assignment.len() != f.vars {
        return Err(GadgetError::Assignment { expected: f.vars, found: assignment.len() });
    }
    let value = |l: i32| assignment[l.unsigned_abs() as usize - 1] == (l > 0);
    Ok(f.clauses.iter().all(|c| {
        let t = c.iter().filter(|&&l| value(l)).count();
        t > 0 && t < 3
    }))
}

/// Exhaustive NAE satisfiability; for small formulas only.
pub fn nae_satisfiable(f: &CnfFormula) -> bool {
    assert!(f.vars < 26, "exhaustive check over {} variables", f.vars);
    (0u32..1 << f.vars).any(|mask| {
        let a: Vec<bool> = (0..f.vars).map(|i| mask >> i & 1 == 1).collect();
        nae_evaluate(f, &a).expect("assignment length matches")
    })
}

/// Vertex ids of [`nae3sat_to_graph`].
pub mod nae_layout {
    /// Literal vertex of `lit`: `2(i-1)` for `x_i`, `2(i-1)+1` for `!x_i`.
    pub fn literal(lit: i32) -> usize {
        2 * (lit.unsigned_abs() as usize - 1) + (lit < 0) as usize
    }

    pub fn hub(vars: usize) -> usize {
        2 * vars
    }

    /// Vertex of the `j`-th triangle corner of clause `i` (both 0-based).
    pub fn clause(vars: usize, i: usize, j: usize) -> usize {
        2 * vars + 1 + 3 * i + j
    }
}

/// Literal vertices joined to their negations and to a hub, plus one
/// triangle per clause whose `j`-th corner sees the clause's `j`-th literal.
pub fn nae3sat_to_graph(f: &CnfFormula) -> Graph {
    use nae_layout::*;
    let nv = f.vars;
    let n = 2 * nv + 1 + 3 * f.clauses.len();
    let mut edges = Vec::new();
    for i in 0..nv {
        edges.push((2 * i, 2 * i + 1));
        edges.push((2 * i, hub(nv)));
        edges.push((2 * i + 1, hub(nv)));
    }
    for (i, c) in f.clauses.iter().enumerate() {
        for j in 0..3 {
            edges.push((clause(nv, i, j), clause(nv, i, (j + 1) % 3)));
            edges.push((literal(c[j]), clause(nv, i, j)));
        }
    }
    for e in &mut edges {
        *e = (e.0.min(e.1), e.0.max(e.1));
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edges(n, edges).expect("construction is simple")
}

/// Vertex ids of [`expand_diameter_girth`] beyond the base graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpansionLayout {
    pub base: usize,
    pub p: usize,
    /// Pairs `(i, j)`, `i < j`, joined by a new path, in order.
    pub pairs: Vec<(usize, usize)>,
}

impl ExpansionLayout {
    /// The pendant `v_{i,1}`.
    pub fn pendant(&self, i: usize) -> usize {
        self.base + i
    }

    /// Internal vertices of the path for pair index `k`, from the `i` side:
    /// `v_{i,2,j} .. v_{i,p+1,j}` then `v_{j,p,i} .. v_{j,2,i}`.
    pub fn internal(&self, k: usize) -> std::ops::Range<usize> {
        let per = 2 * self.p - 1;
        let start = 2 * self.base + k * per;
        start..start + per
    }
}

/// The girth-preserving diameter reduction: a pendant `v_{i,1}` per vertex
/// and, for every pair at distance above `2p - 1`, a path of length
/// `2p + 2` from `v_i` to `v_j` through both pendants.
pub fn expand_diameter_girth(g: &Graph, p: usize) -> Result<(Graph, ExpansionLayout), GadgetError> {
    if p == 0 {
        return Err(GadgetError::Precondition("p must be at least 1".into()));
    }
    if !g.is_connected() {
        return Err(GadgetError::Precondition("base graph is disconnected".into()));
    }
    let need = 8 * p - 3;
    if let Distance::Finite(girth) = metric::girth(g) {
        if girth < need {
            return Err(GadgetError::Precondition(format!("girth {girth} is below 8p - 3 = {need}")));
        }
    }
    let n = g.n();
    let dist: Vec<Vec<Distance>> = (0..n).map(|s| metric::distances_from(g, s)).collect::<Result<_, _>>()?;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !dist[i][j].at_most(2 * p - 1))
        .collect();
    let layout = ExpansionLayout { base: n, p, pairs };
    let total = 2 * n + layout.pairs.len() * (2 * p - 1);
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.extend((0..n).map(|i| (i, layout.pendant(i))));
    for (k, &(i, j)) in layout.pairs.iter().enumerate() {
        let mut walk = vec![layout.pendant(i)];
        walk.extend(layout.internal(k));
        walk.push(layout.pendant(j));
        edges.extend(walk.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))));
    }
    Ok((Graph::from_edges(total, edges)?, layout))
}

/// Greedy maximal independent set, lowest id first.
pub fn greedy_independent_set(g: &Graph) -> Vec<usize> {
    let mut taken = vec![false; g.n()];
    let mut set = Vec::new();
    for v in g.vertices() {
        if !g.neighbours(v).iter().any(|&w| taken[w]) {
            taken[v] = true;
            set.push(v);
        }
    }
    set
}

/// Adds `x_{uv}` adjacent to exactly `u` and `v` for every pair of a greedy
/// maximal independent set. New vertices follow the pairs in order.
pub fn claw_free_spread(g: &Graph) -> Result<(Graph, Vec<usize>), GadgetError> {
    if !g.is_connected() {
        return Err(GadgetError::Precondition("base graph is disconnected".into()));
    }
    if let Ok(Some(claw)) = contains_induced(g, &PolyadSpec::CLAW) {
        return Err(GadgetError::Precondition(format!("base graph has an induced claw at {claw:?}")));
    }
    let s = greedy_independent_set(g);
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    let mut next = g.n();
    for (a, &u) in s.iter().enumerate() {
        for &v in &s[a + 1..] {
            edges.push((u, next));
            edges.push((v, next));
            next += 1;
        }
    }
    Ok((Graph::from_edges(next, edges)?, s))
}

/// One new vertex adjacent to every vertex of `g`; its id is `g.n()`.
pub fn add_dominating_vertex(g: &Graph) -> Graph {
    g.with_dominating_vertex()
}

/// A measured value against the bound a reduction claims.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub claim: String,
    pub measured: Distance,
    pub ok: bool,
}

impl Claim {
    fn at_most(measured: Distance, bound: usize) -> Self {
        Claim { claim: format!("<= {bound}"), measured, ok: measured.at_most(bound) }
    }

    fn at_least(measured: Distance, bound: usize) -> Self {
        let ok = measured.finite().is_none_or(|m| m >= bound);
        Claim { claim: format!(">= {bound}"), measured, ok }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessCheck {
    pub pattern: String,
    pub free: bool,
    pub witness: Option<Vec<usize>>,
}

/// Oracle comparison of colourability on both sides of a reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub base_colours: u32,
    pub gadget_colours: u32,
    pub base_colourable: bool,
    pub gadget_colourable: bool,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetCertificate {
    pub gadget: String,
    pub vertices: usize,
    pub edges: usize,
    pub diameter: Option<Claim>,
    pub girth: Option<Claim>,
    pub freeness: Vec<FreenessCheck>,
    pub claw_centres_independent: Option<bool>,
    pub equivalence: Option<Equivalence>,
    pub passed: bool,
}

impl GadgetCertificate {
    fn new(gadget: &str, g: &Graph) -> Self {
        GadgetCertificate {
            gadget: gadget.to_string(),
            vertices: g.n(),
            edges: g.m(),
            diameter: None,
            girth: None,
            freeness: Vec::new(),
            claw_centres_independent: None,
            equivalence: None,
            passed: true,
        }
    }

    fn seal(mut self) -> Self {
        self.passed = self.diameter.as_ref().is_none_or(|c| c.ok)
            && self.girth.as_ref().is_none_or(|c| c.ok)
            && self.freeness.iter().all(|f| f.free)
            && self.claw_centres_independent.unwrap_or(true)
            && self.equivalence.as_ref().is_none_or(|e| e.ok);
        self
    }

    fn freeness(&mut self, g: &Graph, spec: PolyadSpec) {
        let witness = contains_induced(g, &spec).expect("certified patterns are within the bound");
        self.freeness.push(FreenessCheck { pattern: spec.to_string(), free: witness.is_none(), witness });
    }
}

/// Whether the oracle comparison runs, and its budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    pub enabled: bool,
    pub node_budget: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { enabled: true, node_budget: DEFAULT_NODE_BUDGET }
    }
}

fn colourable(g: &Graph, k: u32, budget: u64) -> Result<bool, ColouringError> {
    Ok(exact_solve_with_budget(g, &ListAssignment::full(g.n(), k), budget)?.0.is_sat())
}

/// Runs the oracle on both graphs; `None` when disabled or over budget.
fn equivalence(base: &Graph, gadget: &Graph, kb: u32, kg: u32, opts: OracleOptions) -> Option<Equivalence> {
    if !opts.enabled {
        return None;
    }
    let b = colourable(base, kb, opts.node_budget).ok()?;
    let g = colourable(gadget, kg, opts.node_budget).ok()?;
    Some(Equivalence { base_colours: kb, gadget_colours: kg, base_colourable: b, gadget_colourable: g, ok: b == g })
}

pub fn certify_expansion(base: &Graph, gadget: &Graph, p: usize, opts: OracleOptions) -> GadgetCertificate {
    let mut cert = GadgetCertificate::new("gprime", gadget);
    cert.diameter = Some(Claim::at_most(metric::diameter(gadget), 4 * p));
    cert.girth = Some(Claim::at_least(metric::girth(gadget), 4 * p + 2));
    cert.equivalence = equivalence(base, gadget, 3, 3, opts);
    cert.seal()
}

/// Certifies the NAE graph; the oracle side compares 3-colourability with
/// NAE satisfiability.
pub fn certify_nae(f: &CnfFormula, gadget: &Graph, opts: OracleOptions) -> GadgetCertificate {
    let mut cert = GadgetCertificate::new("nae", gadget);
    cert.diameter = Some(Claim::at_most(metric::diameter(gadget), 4));
    cert.freeness(gadget, PolyadSpec::SubdividedStar { r: 4, l: 3 });
    if opts.enabled && f.vars < 26 {
        if let Ok(g) = colourable(gadget, 3, opts.node_budget) {
            let sat = nae_satisfiable(f);
            cert.equivalence = Some(Equivalence {
                base_colours: 0,
                gadget_colours: 3,
                base_colourable: sat,
                gadget_colourable: g,
                ok: sat == g,
            });
        }
    }
    cert.seal()
}

pub fn certify_spread(base: &Graph, gadget: &Graph, opts: OracleOptions) -> GadgetCertificate {
    let mut cert = GadgetCertificate::new("spread", gadget);
    cert.diameter = Some(Claim::at_most(metric::diameter(gadget), 4));
    cert.claw_centres_independent = Some(claw_centres_independent(gadget).member);
    cert.equivalence = equivalence(base, gadget, 3, 3, opts);
    cert.seal()
}

/// Certifies the dominating-vertex construction for `k`-colourability.
pub fn certify_dominating(base: &Graph, gadget: &Graph, k: u32, opts: OracleOptions) -> GadgetCertificate {
    let mut cert = GadgetCertificate::new("dominate", gadget);
    if base.n() > 0 {
        cert.diameter = Some(Claim::at_most(metric::diameter(gadget), 2));
    }
    cert.equivalence = equivalence(base, gadget, k, k + 1, opts);
    cert.seal()
}

/// Whether the locally-claw-free superclass check holds; exposed for the
/// spread gadget reports.
pub fn locally_claw_free(g: &Graph) -> bool {
    is_locally_claw_free(g).member
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn fig5() -> CnfFormula {
        CnfFormula::new(4, vec![[1, 2, 3], [3, -3, 4]]).unwrap()
    }

    #[test]
    fn figure_five_counts() {
        let g = nae3sat_to_graph(&fig5());
        assert_eq!((g.n(), g.m()), (15, 24));
        assert!(g.has_edge(nae_layout::literal(-3), nae_layout::clause(4, 1, 1)));
        let cert = certify_nae(&fig5(), &g, OracleOptions::default());
        assert!(cert.passed, "{cert:?}");
    }

    #[test]
    fn nae_evaluation() {
        let single = CnfFormula::new(3, vec![[1, 2, 3]]).unwrap();
        assert!(nae_evaluate(&single, &[true, true, false]).unwrap());
        assert!(!nae_evaluate(&single, &[true, true, true]).unwrap());
        assert!(nae_evaluate(&fig5(), &[true, false, true, false]).unwrap());
        assert_eq!(
            nae_evaluate(&single, &[true]),
            Err(GadgetError::Assignment { expected: 3, found: 1 })
        );
    }

    #[test]
    fn occurrence_caps() {
        assert!(CnfFormula::new(3, vec![[1, 2, 3], [1, 2, 3], [1, -2, 3]]).is_err());
        assert!(CnfFormula::new(3, vec![[1, 2, 3], [-1, 2, 3], [-1, -2, -3]]).is_ok());
        assert!(CnfFormula::new(2, vec![[1, 2, 3]]).is_err());
    }

    #[test]
    fn dimacs() {
        let f = parse_dimacs("c fig 5\np cnf 4 2\n1 2 3 0\n3 -3\n4 0\n").unwrap();
        assert_eq!(f, fig5());
        assert_eq!(parse_dimacs(&f.to_dimacs()).unwrap(), f);
        assert!(matches!(parse_dimacs("p cnf 3 1\n1 2 0\n"), Err(GadgetError::Parse { line: 2, .. })));
        assert!(matches!(parse_dimacs("1 2 3 0\n"), Err(GadgetError::Parse { line: 1, .. })));
    }

    #[test]
    fn expansion_of_a_path_and_an_edge() {
        let (g, layout) = expand_diameter_girth(&named::path(4), 1).unwrap();
        assert_eq!((g.n(), g.m()), (11, 13));
        assert_eq!(layout.pairs, vec![(0, 2), (0, 3), (1, 3)]);
        let cert = certify_expansion(&named::path(4), &g, 1, OracleOptions::default());
        assert!(cert.passed, "{cert:?}");
        let (k2, layout) = expand_diameter_girth(&named::path(2), 1).unwrap();
        assert_eq!((k2.n(), k2.m()), (4, 3));
        assert!(layout.pairs.is_empty());
        assert!(expand_diameter_girth(&named::cycle(4), 1).is_err());
    }

    #[test]
    fn expansion_path_lengths_for_larger_p() {
        let base = named::path(6);
        let (g, layout) = expand_diameter_girth(&base, 2).unwrap();
        assert_eq!(layout.pairs, vec![(0, 4), (0, 5), (1, 5)]);
        for &(i, j) in &layout.pairs {
            let d = metric::distance(&g, i, j).unwrap();
            assert!(d.at_most(6), "{i} {j} {d}");
        }
    }

    #[test]
    fn spread_examples() {
        let (k3, s) = claw_free_spread(&named::complete(3)).unwrap();
        assert_eq!((k3.n(), k3.m(), s), (3, 3, vec![0]));
        let (p4, s) = claw_free_spread(&named::path(4)).unwrap();
        assert_eq!(s, vec![0, 2]);
        assert_eq!(p4.neighbours(4), &[0, 2]);
        let (c6, _) = claw_free_spread(&named::cycle(6)).unwrap();
        assert!(certify_spread(&named::cycle(6), &c6, OracleOptions::default()).passed);
        assert!(claw_free_spread(&named::star(3)).is_err());
    }

    #[test]
    fn dominating_vertex() {
        let w5 = add_dominating_vertex(&named::cycle(5));
        assert_eq!((w5.n(), w5.m()), (6, 10));
        assert!(certify_dominating(&named::cycle(5), &w5, 3, OracleOptions::default()).passed);
        let star = add_dominating_vertex(&Graph::empty(4));
        assert_eq!(star.degree(4), 4);
    }
}
