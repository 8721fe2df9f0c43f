use super::{Colour, ColourSet, ColouringError};
use crate::graph::Graph;

pub const DEFAULT_ENUMERATION_BOUND: usize = 25;

/// `(vertex, colour)` pairs, one per vertex of the enumerated set, in the
/// order the set was given.
pub type PartialColouring = Vec<(usize, Colour)>;

/// Lazily yields every proper colouring of `G[s]` that respects `lists`.
#[derive(Clone, Debug)]
pub struct RespectingColourings {
    vertices: Vec<usize>,
    /// For position `i`, the earlier positions adjacent to it.
    earlier: Vec<Vec<usize>>,
    lists: Vec<ColourSet>,
    remaining: Vec<ColourSet>,
    choice: Vec<Colour>,
    depth: usize,
    done: bool,
    yielded: u64,
}

/// Starts the enumeration. Duplicate vertices in `s` are ignored.
pub fn enumerate_respecting_colourings(
    g: &Graph,
    s: &[usize],
    lists: &[ColourSet],
    bound: usize,
) -> Result<RespectingColourings, ColouringError> {
    let mut vertices = Vec::with_capacity(s.len());
    let mut seen = vec![false; g.n()];
    for &v in s {
        if v >= g.n() || v >= lists.len() {
            return Err(ColouringError::InvalidVertex(v));
        }
        if !std::mem::replace(&mut seen[v], true) {
            vertices.push(v);
        }
    }
    if vertices.len() > bound {
        return Err(ColouringError::EnumerationBound { size: vertices.len(), bound });
    }
    let earlier = (0..vertices.len())
        .map(|i| (0..i).filter(|&j| g.has_edge(vertices[i], vertices[j])).collect())
        .collect();
    let k = vertices.len();
    let mut it = RespectingColourings {
        lists: vertices.iter().map(|&v| lists[v]).collect(),
        vertices,
        earlier,
        remaining: vec![ColourSet::EMPTY; k],
        choice: vec![0; k],
        depth: 0,
        done: false,
        yielded: 0,
    };
    if k > 0 {
        it.remaining[0] = it.candidates(0);
    }
    Ok(it)
}

impl RespectingColourings {
    fn candidates(&self, i: usize) -> ColourSet {
        self.earlier[i].iter().fold(self.lists[i], |acc, &j| acc.without(self.choice[j]))
    }

    /// Colourings produced so far.
    pub fn yielded(&self) -> u64 {
        self.yielded
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }
}

impl Iterator for RespectingColourings {
    type Item = PartialColouring;

    fn next(&mut self) -> Option<PartialColouring> {
        if self.done {
            return None;
        }
        let k = self.vertices.len();
        if k == 0 {
            self.done = true;
            self.yielded += 1;
            return Some(Vec::new());
        }
        loop {
            let d = self.depth;
            if let Some(c) = self.remaining[d].first() {
                self.remaining[d].remove(c);
                self.choice[d] = c;
                if d + 1 == k {
                    self.yielded += 1;
                    return Some(self.vertices.iter().copied().zip(self.choice.iter().copied()).collect());
                }
                self.depth += 1;
                self.remaining[d + 1] = self.candidates(d + 1);
            } else if d == 0 {
                self.done = true;
                return None;
            } else {
                self.depth -= 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use std::collections::HashSet;

    fn full(n: usize) -> Vec<ColourSet> {
        vec![ColourSet::palette(3); n]
    }

    #[test]
    fn counts() {
        let g = named::cycle(5);
        let all: Vec<_> = enumerate_respecting_colourings(&g, &[0, 1, 2, 3, 4], &full(5), 25).unwrap().collect();
        assert_eq!(all.len(), 30);
        assert_eq!(all.iter().collect::<HashSet<_>>().len(), 30);
        let one = enumerate_respecting_colourings(&g, &[2], &full(5), 25).unwrap().count();
        assert_eq!(one, 3);
        let e = named::path(2);
        let clash = vec![ColourSet::singleton(1); 2];
        assert_eq!(enumerate_respecting_colourings(&e, &[0, 1], &clash, 25).unwrap().count(), 0);
        assert_eq!(enumerate_respecting_colourings(&e, &[], &clash, 25).unwrap().count(), 1);
    }

    #[test]
    fn bound_is_enforced() {
        let g = Graph::empty(30);
        let s: Vec<usize> = (0..26).collect();
        assert_eq!(
            enumerate_respecting_colourings(&g, &s, &full(30), DEFAULT_ENUMERATION_BOUND).unwrap_err(),
            ColouringError::EnumerationBound { size: 26, bound: 25 }
        );
    }

    #[test]
    fn matches_brute_force_on_induced_subgraph() {
        let g = named::petersen();
        let s = [0, 1, 2, 5, 7, 9];
        let lists = full(10);
        let got = enumerate_respecting_colourings(&g, &s, &lists, 25).unwrap().count();
        let mut brute = 0;
        for code in 0..3usize.pow(6) {
            let col: Vec<u32> = (0..6).map(|i| (code / 3usize.pow(i)) as u32 % 3 + 1).collect();
            let ok = (0..6).all(|i| (0..i).all(|j| !g.has_edge(s[i], s[j]) || col[i] != col[j]));
            brute += ok as usize;
        }
        assert_eq!(got, brute);
    }
}
