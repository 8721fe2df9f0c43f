//! Named graphs addressable as `builtin:<name>`.

use crate::graph::{named, Graph};

/// Names accepted by [`by_name`].
pub const NAMES: &[&str] = &[
    "k4", "c5", "petersen", "fig2-left", "fig2-right", "fig4", "s234", "p4", "claw", "k3",
];

pub fn by_name(name: &str) -> Option<Graph> {
    Some(match name {
        "k4" => named::complete(4),
        "k3" => named::complete(3),
        "c5" => named::cycle(5),
        "p4" => named::path(4),
        "claw" => named::star(3),
        "petersen" => named::petersen(),
        "fig2-left" => fig2_left(),
        "fig2-right" => fig2_right(),
        "fig4" => fig4(),
        "s234" => s234(),
        _ => return None,
    })
}

/// Quasi-claw-free but not locally claw-free.
///
/// Vertices: `a1 a2 a3 x1 x2 b12 b13 b23` = `0..8`. `x1` and `x2` are
/// adjacent to every other vertex, `b_ij` is adjacent to `a_i` and `a_j`.
pub fn fig2_left() -> Graph {
    let (a1, a2, a3, x1, x2, b12, b13, b23) = (0, 1, 2, 3, 4, 5, 6, 7);
    let mut edges = vec![(x1, x2)];
    for x in [x1, x2] {
        for v in [a1, a2, a3, b12, b13, b23] {
            edges.push((x, v));
        }
    }
    edges.extend([(a1, b12), (a1, b13), (a2, b12), (a2, b23), (a3, b13), (a3, b23)]);
    Graph::from_edges(8, edges).unwrap()
}

/// Almost claw-free but not quasi-claw-free: `v0..v4` = `0..5`.
///
/// `v0` and `v4` have `v1` as their only common neighbour and neither is
/// adjacent to the neighbour `v2` of `v1`.
pub fn fig2_right() -> Graph {
    Graph::from_edges(5, [(0, 1), (1, 2), (1, 3), (1, 4), (2, 3), (3, 4)]).unwrap()
}

/// Chair-free graph layered around an induced 5-cycle.
///
/// `x1..x5` = `0..5` (the cycle), `y` = 5 adjacent to `x1, x2`, `z` = 6
/// adjacent to `y`, and the adjacent pair `w1, w2` = `7, 8` below `z`.
pub fn fig4() -> Graph {
    let edges = [
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 0),
        (5, 0),
        (5, 1),
        (5, 6),
        (6, 7),
        (6, 8),
        (7, 8),
    ];
    Graph::from_edges(9, edges).unwrap()
}

/// The subdivided claw `S_{2,3,4}` with centre 0.
pub fn s234() -> Graph {
    crate::recognition::PolyadSpec::SubdividedClaw { h: 2, i: 3, j: 4 }
        .to_graph()
        .expect("S_{2,3,4} is a valid polyad")
}
