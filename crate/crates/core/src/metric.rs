//! Distances, diameter, girth, short and induced cycles, BFS layerings.

use std::collections::VecDeque;

use serde::Serialize;

use crate::graph::{Distance, Graph, GraphError};

/// Step budget for the induced-cycle search when none is given.
pub const DEFAULT_CYCLE_SEARCH_BUDGET: u64 = 50_000_000;

const UNSEEN: usize = usize::MAX;

struct Bfs {
    dist: Vec<usize>,
    parent: Vec<usize>,
}

fn bfs_from(g: &Graph, sources: &[usize]) -> Bfs {
    let mut dist = vec![UNSEEN; g.n()];
    let mut parent = vec![UNSEEN; g.n()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if dist[s] == UNSEEN {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbours(u) {
            if dist[w] == UNSEEN {
                dist[w] = dist[u] + 1;
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    Bfs { dist, parent }
}

/// BFS distances from `source`; `Distance::Infinite` for unreachable vertices.
pub fn distances_from(g: &Graph, source: usize) -> Result<Vec<Distance>, GraphError> {
    g.check_vertex(source)?;
    Ok(bfs_from(g, &[source])
        .dist
        .into_iter()
        .map(|d| if d == UNSEEN { Distance::Infinite } else { Distance::Finite(d) })
        .collect())
}

pub fn distance(g: &Graph, u: usize, v: usize) -> Result<Distance, GraphError> {
    g.check_vertex(v)?;
    Ok(distances_from(g, u)?[v])
}

/// Largest pairwise distance; infinite iff disconnected, 0 when `n <= 1`.
pub fn diameter(g: &Graph) -> Distance {
    let mut best = 0;
    for s in g.vertices() {
        let bfs = bfs_from(g, &[s]);
        for &d in &bfs.dist {
            if d == UNSEEN {
                return Distance::Infinite;
            }
            best = best.max(d);
        }
    }
    Distance::Finite(best)
}

/// Closing edge of the shortest cycle found from one BFS root.
struct CycleHit {
    len: usize,
    root: usize,
    u: usize,
    w: usize,
}

fn shortest_cycle_hit(g: &Graph, odd_only: bool) -> Option<CycleHit> {
    let mut best: Option<CycleHit> = None;
    for r in g.vertices() {
        let mut dist = vec![UNSEEN; g.n()];
        let mut parent = vec![UNSEEN; g.n()];
        let mut queue = VecDeque::from([r]);
        dist[r] = 0;
        'bfs: while let Some(u) = queue.pop_front() {
            if let Some(b) = &best {
                // Every cycle closed from here on is at least this long.
                if 2 * dist[u] >= b.len {
                    break 'bfs;
                }
            }
            for &w in g.neighbours(u) {
                if dist[w] == UNSEEN {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    if odd_only && dist[w] != dist[u] {
                        continue;
                    }
                    let len = dist[u] + dist[w] + 1;
                    if best.as_ref().is_none_or(|b| len < b.len) {
                        best = Some(CycleHit { len, root: r, u, w });
                    }
                }
            }
        }
    }
    best
}

fn rebuild_cycle(g: &Graph, hit: &CycleHit) -> Vec<usize> {
    let bfs = bfs_from(g, &[hit.root]);
    let climb = |mut x: usize| {
        let mut out = vec![x];
        while x != hit.root {
            x = bfs.parent[x];
            out.push(x);
        }
        out
    };
    let mut cycle = climb(hit.u);
    cycle.reverse();
    let mut tail = climb(hit.w);
    tail.pop();
    cycle.extend(tail);
    debug_assert_eq!(cycle.len(), hit.len);
    cycle
}

/// Length of a shortest cycle; infinite for forests.
pub fn girth(g: &Graph) -> Distance {
    shortest_cycle_hit(g, false).map_or(Distance::Infinite, |h| Distance::Finite(h.len))
}

/// A shortest cycle as a vertex sequence. Shortest cycles have no chords.
pub fn shortest_cycle(g: &Graph) -> Option<Vec<usize>> {
    shortest_cycle_hit(g, false).map(|h| rebuild_cycle(g, &h))
}

/// A shortest odd cycle, or `None` for bipartite graphs. A chord of an odd
/// cycle would split off a shorter odd cycle, so the result is induced.
pub fn shortest_odd_cycle(g: &Graph) -> Option<Vec<usize>> {
    shortest_cycle_hit(g, true).map(|h| rebuild_cycle(g, &h))
}

fn check_diameter_bound(g: &Graph, d: usize) -> Result<(), GraphError> {
    let actual = diameter(g);
    if actual.at_most(d) {
        Ok(())
    } else {
        Err(GraphError::DiameterExceeded { bound: d, actual })
    }
}

/// For a connected graph of diameter at most `d`: an induced cycle of length
/// at most `2d + 1`, or `None` iff the graph is a tree.
pub fn find_short_cycle(g: &Graph, d: usize) -> Result<Option<Vec<usize>>, GraphError> {
    check_diameter_bound(g, d)?;
    let cycle = shortest_cycle(g);
    debug_assert!(cycle.as_ref().is_none_or(|c| c.len() <= 2 * d + 1));
    Ok(cycle)
}

/// Odd-cycle variant: an odd induced cycle of length at most `2d + 1`, or
/// `None` iff the graph is bipartite.
pub fn find_short_odd_cycle(g: &Graph, d: usize) -> Result<Option<Vec<usize>>, GraphError> {
    check_diameter_bound(g, d)?;
    Ok(shortest_odd_cycle(g))
}

/// `true` iff `cycle` lists at least three distinct vertices forming a cycle
/// in that order with no chords.
pub fn is_induced_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 3 || cycle.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != k {
        return false;
    }
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if g.has_edge(cycle[i], cycle[j]) != consecutive {
                return false;
            }
        }
    }
    true
}

struct InducedCycleSearch<'a> {
    g: &'a Graph,
    max_len: usize,
    budget: u64,
    steps: u64,
    path: Vec<usize>,
    on_path: Vec<bool>,
    best: Option<Vec<usize>>,
}

impl InducedCycleSearch<'_> {
    fn best_len(&self) -> usize {
        self.best.as_ref().map_or(0, Vec::len)
    }

    /// Extends the induced path `self.path`, whose first vertex is its
    /// smallest. Returns `Ok(true)` once a cycle of length `max_len` is found.
    fn extend(&mut self) -> Result<bool, GraphError> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(GraphError::BudgetExceeded(self.budget));
        }
        let g = self.g;
        let start = self.path[0];
        let last = *self.path.last().unwrap();
        for &v in g.neighbours(last) {
            let k = self.path.len();
            if v <= start || self.on_path[v] || (1..k.saturating_sub(1)).any(|i| g.has_edge(self.path[i], v)) {
                continue;
            }
            if k >= 2 && g.has_edge(start, v) {
                if k < self.max_len {
                    let len = self.path.len() + 1;
                    if len > self.best_len() {
                        let mut c = self.path.clone();
                        c.push(v);
                        self.best = Some(c);
                        if len == self.max_len {
                            return Ok(true);
                        }
                    }
                }
                continue;
            }
            if self.path.len() + 2 > self.max_len {
                continue;
            }
            self.path.push(v);
            self.on_path[v] = true;
            let done = self.extend()?;
            self.on_path[v] = false;
            self.path.pop();
            if done {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// An induced cycle of maximum length among those of length at most
/// `max_len`, found by depth-first search over induced paths.
pub fn largest_induced_cycle_upto(g: &Graph, max_len: usize) -> Result<Option<Vec<usize>>, GraphError> {
    largest_induced_cycle_upto_with_budget(g, max_len, DEFAULT_CYCLE_SEARCH_BUDGET)
}

pub fn largest_induced_cycle_upto_with_budget(
    g: &Graph,
    max_len: usize,
    budget: u64,
) -> Result<Option<Vec<usize>>, GraphError> {
    let mut search = InducedCycleSearch {
        g,
        max_len,
        budget,
        steps: 0,
        path: Vec::with_capacity(max_len),
        on_path: vec![false; g.n()],
        best: None,
    };
    if max_len < 3 {
        return Ok(None);
    }
    for s in g.vertices() {
        search.path.push(s);
        search.on_path[s] = true;
        let done = search.extend()?;
        search.on_path[s] = false;
        search.path.pop();
        if done {
            break;
        }
    }
    Ok(search.best)
}

/// Partition of a connected graph by distance to a seed set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BfsLayering {
    pub seed: Vec<usize>,
    pub layers: Vec<Vec<usize>>,
    /// `layer_of[v]` is the index of the layer containing `v`.
    pub layer_of: Vec<usize>,
}

impl BfsLayering {
    pub fn depth(&self) -> usize {
        self.layers.len()
    }
}

pub fn bfs_layers(g: &Graph, seed: &[usize]) -> Result<BfsLayering, GraphError> {
    if seed.is_empty() {
        return Err(GraphError::EmptySeed);
    }
    for &s in seed {
        g.check_vertex(s)?;
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let bfs = bfs_from(g, seed);
    let depth = bfs.dist.iter().max().copied().unwrap_or(0) + 1;
    let mut layers = vec![Vec::new(); depth];
    for v in g.vertices() {
        layers[bfs.dist[v]].push(v);
    }
    let mut seed = seed.to_vec();
    seed.sort_unstable();
    seed.dedup();
    Ok(BfsLayering {
        seed,
        layers,
        layer_of: bfs.dist,
    })
}
