//! Membership tests for the hereditary classes the solvers rely on, each
//! returning a checkable witness when the graph falls outside the class.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

/// Largest pattern accepted by [`contains_induced`] by default.
pub const DEFAULT_PATTERN_BOUND: usize = 12;

/// Largest `r` for which the dominating-set condition of almost
/// `K_{1,r}`-freeness is checked exhaustively.
pub const MAX_ALMOST_R: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecognitionError {
    #[error("pattern {spec} has {size} vertices, above the bound {bound}")]
    PatternTooLarge { spec: String, size: usize, bound: usize },
    #[error("invalid pattern: {0}")]
    InvalidSpec(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
}

/// The small forbidden graphs named by the class definitions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PolyadSpec {
    /// `K_{1,r}`.
    Star { r: usize },
    /// `K_{1,r}` with one edge subdivided `l` times.
    SubdividedStar { r: usize, l: usize },
    /// Three paths of lengths `h <= i <= j` glued at a centre.
    SubdividedClaw { h: usize, i: usize, j: usize },
    Path { t: usize },
    Cycle { t: usize },
    Clique { t: usize },
}

impl PolyadSpec {
    pub const CLAW: PolyadSpec = PolyadSpec::Star { r: 3 };
    pub const CHAIR: PolyadSpec = PolyadSpec::SubdividedClaw { h: 1, i: 1, j: 2 };

    pub fn validate(&self) -> Result<(), RecognitionError> {
        let ok = match *self {
            PolyadSpec::Star { r } => r >= 1,
            PolyadSpec::SubdividedStar { r, l } => r >= 1 && l >= 1,
            PolyadSpec::SubdividedClaw { h, i, j } => 1 <= h && h <= i && i <= j,
            PolyadSpec::Path { t } | PolyadSpec::Clique { t } => t >= 1,
            PolyadSpec::Cycle { t } => t >= 3,
        };
        if ok {
            Ok(())
        } else {
            Err(RecognitionError::InvalidSpec(format!("parameters out of range for {self}")))
        }
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            PolyadSpec::Star { r } => r + 1,
            PolyadSpec::SubdividedStar { r, l } => r + l + 1,
            PolyadSpec::SubdividedClaw { h, i, j } => h + i + j + 1,
            PolyadSpec::Path { t } | PolyadSpec::Cycle { t } | PolyadSpec::Clique { t } => t,
        }
    }

    /// The pattern graph. For stars and claws vertex 0 is the centre.
    pub fn to_graph(&self) -> Result<Graph, RecognitionError> {
        self.validate()?;
        let n = self.vertex_count();
        let mut edges = Vec::new();
        // Arms hang off vertex 0; `next` is the first unused id.
        let mut next = 1;
        let mut arm = |edges: &mut Vec<(usize, usize)>, len: usize| {
            let mut prev = 0;
            for _ in 0..len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        };
        match *self {
            PolyadSpec::Star { r } => (0..r).for_each(|_| arm(&mut edges, 1)),
            PolyadSpec::SubdividedStar { r, l } => {
                (0..r - 1).for_each(|_| arm(&mut edges, 1));
                arm(&mut edges, l + 1);
            }
            PolyadSpec::SubdividedClaw { h, i, j } => {
                for len in [h, i, j] {
                    arm(&mut edges, len);
                }
            }
            PolyadSpec::Path { t } => edges.extend((1..t).map(|v| (v - 1, v))),
            PolyadSpec::Cycle { t } => edges.extend((0..t).map(|v| (v, (v + 1) % t))),
            PolyadSpec::Clique { t } => edges.extend((0..t).flat_map(|u| (u + 1..t).map(move |v| (u, v)))),
        }
        Ok(Graph::from_edges(n, edges).expect("pattern graphs are simple"))
    }
}

impl fmt::Display for PolyadSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PolyadSpec::Star { r } => write!(f, "K1,{r}"),
            PolyadSpec::SubdividedStar { r, l } => write!(f, "K1,{r}^{l}"),
            PolyadSpec::SubdividedClaw { h, i, j } => write!(f, "S{h},{i},{j}"),
            PolyadSpec::Path { t } => write!(f, "P{t}"),
            PolyadSpec::Cycle { t } => write!(f, "C{t}"),
            PolyadSpec::Clique { t } => write!(f, "K{t}"),
        }
    }
}

impl FromStr for PolyadSpec {
    type Err = RecognitionError;

    /// Accepts `K1,r`, `K1,r^l`, `Sh,i,j`, `Pt`, `Ct`, `Kt`, `claw`, `chair`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RecognitionError::InvalidSpec(format!("cannot parse `{s}`"));
        let nums = |body: &str| -> Result<Vec<usize>, RecognitionError> {
            body.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect()
        };
        let s = s.trim();
        let spec = match s {
            "claw" => PolyadSpec::CLAW,
            "chair" => PolyadSpec::CHAIR,
            _ if s.starts_with("K1,") => {
                let body = &s[3..];
                match body.split_once('^') {
                    Some((r, l)) => PolyadSpec::SubdividedStar {
                        r: r.parse().map_err(|_| bad())?,
                        l: l.parse().map_err(|_| bad())?,
                    },
                    None => PolyadSpec::Star { r: body.parse().map_err(|_| bad())? },
                }
            }
            _ if s.starts_with('S') => match nums(&s[1..])?.as_slice() {
                &[h, i, j] => PolyadSpec::SubdividedClaw { h, i, j },
                _ => return Err(bad()),
            },
            _ if s.len() > 1 => {
                let t = s[1..].parse().map_err(|_| bad())?;
                match &s[..1] {
                    "P" => PolyadSpec::Path { t },
                    "C" => PolyadSpec::Cycle { t },
                    "K" => PolyadSpec::Clique { t },
                    _ => return Err(bad()),
                }
            }
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Backtracking search for an induced copy of `pattern` in `g`.
///
/// Pattern vertices are placed in BFS order from a maximum-degree vertex, so
/// every later vertex of a connected pattern is drawn from the neighbourhood
/// of an already placed one. Returns `map` with `map[p]` the image of
/// pattern vertex `p`.
pub fn find_induced(g: &Graph, pattern: &Graph) -> Option<Vec<usize>> {
    let k = pattern.n();
    if k == 0 {
        return Some(Vec::new());
    }
    if k > g.n() {
        return None;
    }
    let order = placement_order(pattern);
    // anchor[i]: position of an earlier neighbour of order[i], if any.
    let anchor: Vec<Option<usize>> = (0..k)
        .map(|i| (0..i).find(|&j| pattern.has_edge(order[j], order[i])))
        .collect();
    let mut image = vec![usize::MAX; k];
    let mut used = vec![false; g.n()];
    if place(g, pattern, &order, &anchor, 0, &mut image, &mut used) {
        let mut map = vec![0; k];
        for (i, &p) in order.iter().enumerate() {
            map[p] = image[i];
        }
        Some(map)
    } else {
        None
    }
}

fn placement_order(pattern: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(pattern.n());
    let mut seen = vec![false; pattern.n()];
    while order.len() < pattern.n() {
        let root = pattern
            .vertices()
            .filter(|&v| !seen[v])
            .max_by_key(|&v| (pattern.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        seen[root] = true;
        let start = order.len();
        order.push(root);
        let mut i = start;
        while i < order.len() {
            let u = order[i];
            i += 1;
            for &w in pattern.neighbours(u) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    order
}

fn place(
    g: &Graph,
    pattern: &Graph,
    order: &[usize],
    anchor: &[Option<usize>],
    i: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if i == order.len() {
        return true;
    }
    let p = order[i];
    let need = pattern.degree(p);
    let fits = |c: usize, image: &[usize], used: &[bool]| {
        !used[c]
            && g.degree(c) >= need
            && (0..i).all(|j| g.has_edge(image[j], c) == pattern.has_edge(order[j], p))
    };
    let candidates: Vec<usize> = match anchor[i] {
        Some(j) => g.neighbours(image[j]).to_vec(),
        None => g.vertices().collect(),
    };
    for c in candidates {
        if fits(c, image, used) {
            image[i] = c;
            used[c] = true;
            if place(g, pattern, order, anchor, i + 1, image, used) {
                return true;
            }
            used[c] = false;
        }
    }
    false
}

pub fn contains_induced(g: &Graph, spec: &PolyadSpec) -> Result<Option<Vec<usize>>, RecognitionError> {
    contains_induced_bounded(g, spec, DEFAULT_PATTERN_BOUND)
}

pub fn contains_induced_bounded(
    g: &Graph,
    spec: &PolyadSpec,
    bound: usize,
) -> Result<Option<Vec<usize>>, RecognitionError> {
    spec.validate()?;
    let size = spec.vertex_count();
    if size > bound {
        return Err(RecognitionError::PatternTooLarge { spec: spec.to_string(), size, bound });
    }
    Ok(find_induced(g, &spec.to_graph()?))
}

/// `true` iff `map` is injective and realises `pattern` as an induced
/// subgraph of `g`.
pub fn is_induced_embedding(g: &Graph, pattern: &Graph, map: &[usize]) -> bool {
    if map.len() != pattern.n() || map.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let mut sorted = map.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != map.len() {
        return false;
    }
    (0..map.len()).all(|a| (a + 1..map.len()).all(|b| g.has_edge(map[a], map[b]) == pattern.has_edge(a, b)))
}

/// Membership verdict for one class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub class: String,
    pub member: bool,
    /// Offending vertices when `member` is false; see `witness_kind`.
    pub witness: Option<Vec<usize>>,
    pub witness_kind: Option<String>,
}

impl ClassReport {
    fn yes(class: impl Into<String>) -> Self {
        ClassReport { class: class.into(), member: true, witness: None, witness_kind: None }
    }

    fn no(class: impl Into<String>, witness: Vec<usize>, kind: &str) -> Self {
        ClassReport {
            class: class.into(),
            member: false,
            witness: Some(witness),
            witness_kind: Some(kind.to_string()),
        }
    }
}

/// An independent set of size `size` inside `candidates`, if one exists.
pub fn find_independent_set(g: &Graph, candidates: &[usize], size: usize) -> Option<Vec<usize>> {
    fn go(g: &Graph, cands: &[usize], size: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == size {
            return true;
        }
        for (i, &c) in cands.iter().enumerate() {
            if cands.len() - i < size - chosen.len() {
                break;
            }
            if chosen.iter().all(|&x| !g.has_edge(x, c)) {
                chosen.push(c);
                if go(g, &cands[i + 1..], size, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::with_capacity(size);
    go(g, candidates, size, &mut chosen).then_some(chosen)
}

/// A clique of size `size` inside `candidates`, if one exists.
pub fn find_clique(g: &Graph, candidates: &[usize], size: usize) -> Option<Vec<usize>> {
    fn go(g: &Graph, cands: &[usize], size: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == size {
            return true;
        }
        for (i, &c) in cands.iter().enumerate() {
            if cands.len() - i < size - chosen.len() {
                break;
            }
            let rest: Vec<usize> = cands[i + 1..].iter().copied().filter(|&x| g.has_edge(c, x)).collect();
            chosen.push(c);
            if go(g, &rest, size, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::with_capacity(size);
    go(g, candidates, size, &mut chosen).then_some(chosen)
}

/// Some `K_4` of `g`, if any.
pub fn find_k4(g: &Graph) -> Option<Vec<usize>> {
    g.vertices().find_map(|u| {
        let higher: Vec<usize> = g.neighbours(u).iter().copied().filter(|&v| v > u).collect();
        find_clique(g, &higher, 3).map(|mut c| {
            c.insert(0, u);
            c
        })
    })
}

/// Centres of induced `K_{1,r}`s: vertices whose neighbourhood holds an
/// independent set of size `r`.
pub fn star_centres(g: &Graph, r: usize) -> Vec<usize> {
    g.vertices()
        .filter(|&u| find_independent_set(g, g.neighbours(u), r).is_some())
        .collect()
}

fn adjacent_pair(g: &Graph, set: &[usize]) -> Option<(usize, usize)> {
    set.iter()
        .enumerate()
        .find_map(|(i, &a)| set[i + 1..].iter().find(|&&b| g.has_edge(a, b)).map(|&b| (a, b)))
}

pub fn h_free(g: &Graph, spec: &PolyadSpec) -> Result<ClassReport, RecognitionError> {
    let class = format!("H-free({spec})");
    Ok(match contains_induced(g, spec)? {
        None => ClassReport::yes(class),
        Some(map) => ClassReport::no(class, map, "induced embedding"),
    })
}

/// Every distance-2 pair `u, v` has a common neighbour `w` whose other
/// neighbours all touch `u` or `v`. Witness: the first failing pair.
pub fn is_quasi_claw_free(g: &Graph) -> ClassReport {
    const CLASS: &str = "quasi-claw-free";
    for u in g.vertices() {
        for v in u + 1..g.n() {
            if g.has_edge(u, v) {
                continue;
            }
            let common: Vec<usize> = g.neighbours(u).iter().copied().filter(|&w| g.has_edge(w, v)).collect();
            if common.is_empty() {
                continue;
            }
            if quasi_centre(g, u, v, &common).is_none() {
                return ClassReport::no(CLASS, vec![u, v], "distance-2 pair without a dominated common neighbour");
            }
        }
    }
    ClassReport::yes(CLASS)
}

/// A common neighbour `w` of the distance-2 pair `u, v` with `N(w)`
/// dominated by `{u, v}`.
pub fn quasi_centre(g: &Graph, u: usize, v: usize, common: &[usize]) -> Option<usize> {
    common.iter().copied().find(|&w| {
        g.neighbours(w)
            .iter()
            .all(|&x| x == u || x == v || g.has_edge(x, u) || g.has_edge(x, v))
    })
}

/// Condition (1) of almost `K_{1,r}`-freeness for `r = 3`.
pub fn claw_centres_independent(g: &Graph) -> ClassReport {
    const CLASS: &str = "claw-centres-independent";
    let centres = star_centres(g, 3);
    match adjacent_pair(g, &centres) {
        None => ClassReport::yes(CLASS),
        Some((a, b)) => ClassReport::no(CLASS, vec![a, b], "adjacent claw centres"),
    }
}

/// Smallest subset of `set` (size at most `max`) dominating `set`.
fn dominating_subset(g: &Graph, set: &[usize], max: usize) -> Option<Vec<usize>> {
    fn dominates(g: &Graph, d: &[usize], set: &[usize]) -> bool {
        set.iter().all(|&x| d.iter().any(|&y| y == x || g.has_edge(x, y)))
    }
    fn go(g: &Graph, set: &[usize], from: usize, left: usize, d: &mut Vec<usize>) -> bool {
        if dominates(g, d, set) {
            return true;
        }
        if left == 0 {
            return false;
        }
        for i in from..set.len() {
            d.push(set[i]);
            if go(g, set, i + 1, left - 1, d) {
                return true;
            }
            d.pop();
        }
        false
    }
    let mut d = Vec::new();
    go(g, set, 0, max, &mut d).then_some(d)
}

pub fn is_almost_k1r_free(g: &Graph, r: usize) -> Result<ClassReport, RecognitionError> {
    if r < 3 {
        return Err(RecognitionError::InvalidSpec(format!("almost-K1,r-freeness needs r >= 3, got {r}")));
    }
    if r > MAX_ALMOST_R {
        return Err(RecognitionError::BudgetExceeded(format!(
            "dominating-set search for r = {r} (limit {MAX_ALMOST_R})"
        )));
    }
    let class = format!("almost-k1r-free({r})");
    let centres = star_centres(g, r);
    if let Some((a, b)) = adjacent_pair(g, &centres) {
        return Ok(ClassReport::no(class, vec![a, b], "adjacent star centres"));
    }
    for u in g.vertices() {
        if dominating_subset(g, g.neighbours(u), r - 1).is_none() {
            return Ok(ClassReport::no(class, vec![u], "neighbourhood without a small dominating set"));
        }
    }
    Ok(ClassReport::yes(class))
}

/// Every neighbourhood induces a claw-free graph. Witness: the vertex
/// followed by the claw (centre first) inside its neighbourhood.
pub fn is_locally_claw_free(g: &Graph) -> ClassReport {
    const CLASS: &str = "locally-claw-free";
    let claw = PolyadSpec::CLAW.to_graph().unwrap();
    for v in g.vertices() {
        let nbhd = g.neighbours(v);
        if nbhd.len() < 4 {
            continue;
        }
        let local = g.induced_subgraph(nbhd);
        if let Some(map) = find_induced(&local, &claw) {
            let mut witness = vec![v];
            witness.extend(map.iter().map(|&i| nbhd[i]));
            return ClassReport::no(CLASS, witness, "vertex whose neighbourhood contains a claw");
        }
    }
    ClassReport::yes(CLASS)
}

/// Patterns reported by [`recognize_all`].
pub const REPORTED_PATTERNS: &[PolyadSpec] = &[
    PolyadSpec::CLAW,
    PolyadSpec::CHAIR,
    PolyadSpec::SubdividedStar { r: 3, l: 2 },
    PolyadSpec::SubdividedClaw { h: 1, i: 2, j: 2 },
    PolyadSpec::SubdividedStar { r: 4, l: 3 },
    PolyadSpec::Cycle { t: 5 },
    PolyadSpec::Clique { t: 4 },
];

/// Reports for every supported class, in a stable order.
pub fn recognize_all(g: &Graph) -> Vec<ClassReport> {
    let mut out = vec![
        is_quasi_claw_free(g),
        is_almost_k1r_free(g, 3).expect("r = 3 is supported"),
        is_locally_claw_free(g),
        claw_centres_independent(g),
    ];
    for spec in REPORTED_PATTERNS {
        out.push(h_free(g, spec).expect("reported patterns are within the bound"));
    }
    out
}
