//! 2-List Colouring in linear time by reduction to 2-SAT.
//!
//! One boolean per vertex, true when the vertex takes the smaller colour of
//! its list. A singleton list `{a}` gives the unit clause `x`, and every edge
//! `uv` with a shared colour `c` the clause "not both `u` and `v` take `c`". The formula is decided with strongly connected
//! components of the implication graph.

use super::{Answer, ColourSet, Colouring, ColouringError, ListAssignment};
use crate::graph::Graph;

/// Literal `2 * var` is positive, `2 * var + 1` its negation.
type Lit = u32;

fn pos(var: u32) -> Lit {
    2 * var
}

fn neg(var: u32) -> Lit {
    2 * var + 1
}

struct TwoSat {
    vars: usize,
    /// Implication edges `a -> b`.
    implications: Vec<(Lit, Lit)>,
}

impl TwoSat {
    fn with_capacity(vars: usize, implications: usize) -> Self {
        TwoSat { vars, implications: Vec::with_capacity(implications) }
    }

    /// Adds `a | b`.
    fn clause(&mut self, a: Lit, b: Lit) {
        self.implications.push((a ^ 1, b));
        self.implications.push((b ^ 1, a));
    }

    /// A satisfying assignment, or `None`.
    fn solve(&self) -> Option<Vec<bool>> {
        let nodes = 2 * self.vars;
        // CSR adjacency.
        let mut start = vec![0u32; nodes + 1];
        for &(a, _) in &self.implications {
            start[a as usize + 1] += 1;
        }
        for i in 0..nodes {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut targets = vec![0 as Lit; self.implications.len()];
        for &(a, b) in &self.implications {
            targets[fill[a as usize] as usize] = b;
            fill[a as usize] += 1;
        }
        let comp = tarjan(nodes, &start, &targets);
        // Tarjan numbers components in reverse topological order.
        (0..self.vars)
            .map(|v| {
                let (p, q) = (comp[pos(v as u32) as usize], comp[neg(v as u32) as usize]);
                (p != q).then_some(p < q)
            })
            .collect()
    }
}

/// Iterative Tarjan; returns the component index of every node.
fn tarjan(nodes: usize, start: &[u32], targets: &[Lit]) -> Vec<u32> {
    const UNSET: u32 = u32::MAX;
    let mut index = vec![UNSET; nodes];
    let mut low = vec![0u32; nodes];
    let mut comp = vec![UNSET; nodes];
    let mut on_stack = vec![false; nodes];
    let mut stack: Vec<u32> = Vec::new();
    // Call stack of (node, next edge offset).
    let mut calls: Vec<(u32, u32)> = Vec::new();
    let mut counter = 0u32;
    let mut components = 0u32;
    for root in 0..nodes as u32 {
        if index[root as usize] != UNSET {
            continue;
        }
        calls.push((root, start[root as usize]));
        index[root as usize] = counter;
        low[root as usize] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root as usize] = true;
        while let Some(&mut (u, ref mut edge)) = calls.last_mut() {
            let ui = u as usize;
            if *edge < start[ui + 1] {
                let w = targets[*edge as usize];
                *edge += 1;
                let wi = w as usize;
                if index[wi] == UNSET {
                    index[wi] = counter;
                    low[wi] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[wi] = true;
                    calls.push((w, start[wi]));
                } else if on_stack[wi] {
                    low[ui] = low[ui].min(index[wi]);
                }
            } else {
                calls.pop();
                if low[ui] == index[ui] {
                    loop {
                        let x = stack.pop().unwrap();
                        on_stack[x as usize] = false;
                        comp[x as usize] = components;
                        if x == u {
                            break;
                        }
                    }
                    components += 1;
                }
                if let Some(&(parent, _)) = calls.last() {
                    let pi = parent as usize;
                    low[pi] = low[pi].min(low[ui]);
                }
            }
        }
    }
    comp
}

/// Decides list colouring when every list has at most two colours.
pub fn solve_two_list(g: &Graph, lists: &ListAssignment) -> Result<Answer, ColouringError> {
    lists.check_len(g)?;
    solve_two_list_sets(g, lists.lists())
}

pub(crate) fn solve_two_list_sets(g: &Graph, lists: &[ColourSet]) -> Result<Answer, ColouringError> {
    if let Some(v) = lists.iter().position(|l| l.len() > 2) {
        return Err(ColouringError::ListTooLarge { vertex: v, size: lists[v].len() });
    }
    if lists.iter().any(|l| l.is_empty()) {
        return Ok(Answer::Unsat);
    }
    // Variable `v` is true when `v` takes the first colour of its list.
    let literal = |v: usize, c| -> Lit {
        if lists[v].first() == Some(c) {
            pos(v as u32)
        } else {
            neg(v as u32)
        }
    };
    let mut sat = TwoSat::with_capacity(lists.len(), 2 * lists.len() + 4 * g.m());
    for (v, l) in lists.iter().enumerate() {
        if l.len() == 1 {
            sat.clause(pos(v as u32), pos(v as u32));
        }
    }
    for (u, v) in g.edges() {
        for c in lists[u].intersection(lists[v]).iter() {
            sat.clause(literal(u, c) ^ 1, literal(v, c) ^ 1);
        }
    }
    let Some(values) = sat.solve() else {
        return Ok(Answer::Unsat);
    };
    let colours = lists
        .iter()
        .zip(values)
        .map(|(l, first)| {
            let mut cs = l.iter();
            let a = cs.next().unwrap();
            if first {
                a
            } else {
                cs.next().unwrap()
            }
        })
        .collect();
    Ok(Answer::Sat(Colouring::from_total(colours)))
}
