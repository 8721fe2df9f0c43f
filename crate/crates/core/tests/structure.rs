use diamchrome::builtin;
use diamchrome::colouring::{chromatic_number, enumerate_respecting_colourings, exact_solve, ColourSet};
use diamchrome::gadgets::{
    add_dominating_vertex, certify_expansion, certify_nae, certify_spread, claw_free_spread, expand_diameter_girth,
    nae3sat_to_graph, nae_evaluate, nae_satisfiable, CnfFormula, OracleOptions,
};
use diamchrome::graph::named;
use diamchrome::metric::{self, bfs_layers, distance, largest_induced_cycle_upto};
use diamchrome::recognition::{
    claw_centres_independent, contains_induced, is_almost_k1r_free, is_locally_claw_free, is_quasi_claw_free,
    recognize_all, PolyadSpec, REPORTED_PATTERNS,
};
use diamchrome::{Distance, Graph, ListAssignment};

#[test]
fn metric_examples() {
    assert_eq!(distance(&named::complete(4), 0, 3).unwrap(), Distance::Finite(1));
    assert_eq!(distance(&named::path(4), 0, 3).unwrap(), Distance::Finite(3));
    assert_eq!(distance(&Graph::empty(2), 0, 1).unwrap(), Distance::Infinite);
    assert_eq!(metric::diameter(&named::cycle(5)), Distance::Finite(2));
    assert_eq!(metric::diameter(&named::petersen()), Distance::Finite(2));
    assert_eq!(metric::girth(&named::cycle(7)), Distance::Finite(7));
    assert_eq!(metric::girth(&named::star(4)), Distance::Infinite);
    assert_eq!(metric::girth(&named::petersen()), Distance::Finite(5));
}

#[test]
fn induced_cycles() {
    let c5_pendant = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (4, 5)]).unwrap();
    assert_eq!(largest_induced_cycle_upto(&c5_pendant, 7).unwrap().map(|c| c.len()), Some(5));
    assert_eq!(largest_induced_cycle_upto(&named::complete(4), 7).unwrap().map(|c| c.len()), Some(3));
    let mut cycle = largest_induced_cycle_upto(&builtin::fig4(), 7).unwrap().unwrap();
    cycle.sort_unstable();
    assert_eq!(cycle, vec![0, 1, 2, 3, 4]);
    assert_eq!(metric::find_short_cycle(&named::star(3), 2).unwrap(), None);
}

#[test]
fn layering_of_figure_four() {
    let layering = bfs_layers(&builtin::fig4(), &[0, 1, 2, 3, 4]).unwrap();
    assert_eq!(layering.depth(), 4);
    assert!(layering.layers[1].contains(&5));
    assert!(layering.layers[2].contains(&6));
    assert!(layering.layers[3].contains(&7) && layering.layers[3].contains(&8));
    let path = bfs_layers(&named::path(4), &[0]).unwrap();
    assert_eq!(path.layers, vec![vec![0], vec![1], vec![2], vec![3]]);
    assert_eq!(bfs_layers(&named::path(4), &[0, 1, 2, 3]).unwrap().depth(), 1);
}

#[test]
fn recognition_examples() {
    let s234 = builtin::s234();
    let map = contains_induced(&s234, &PolyadSpec::CLAW).unwrap().unwrap();
    assert_eq!(map[0], 0);
    assert_eq!(contains_induced(&named::cycle(5), &PolyadSpec::Clique { t: 4 }).unwrap(), None);

    let left = builtin::fig2_left();
    assert!(is_quasi_claw_free(&left).member);
    let local = is_locally_claw_free(&left);
    assert!(!local.member);
    assert_eq!(local.witness.unwrap()[0], 3);

    let right = builtin::fig2_right();
    assert!(is_almost_k1r_free(&right, 3).unwrap().member);
    assert!(is_locally_claw_free(&right).member);
    assert!(!is_quasi_claw_free(&right).member);

    // Two adjacent claw centres.
    let twin = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
    assert!(!is_almost_k1r_free(&twin, 3).unwrap().member);
    assert!(!claw_centres_independent(&twin).member);

    let k4 = named::complete(4);
    for spec in REPORTED_PATTERNS.iter().filter(|p| p.vertex_count() > 4) {
        assert_eq!(contains_induced(&k4, spec).unwrap(), None, "{spec}");
    }
    assert_eq!(recognize_all(&k4).len(), 4 + REPORTED_PATTERNS.len());
}

#[test]
fn colouring_examples() {
    assert!(!exact_solve(&named::complete(4), &ListAssignment::full(4, 3)).unwrap().is_sat());
    assert_eq!(chromatic_number(&named::petersen()).unwrap(), 3);
    let c5 = named::cycle(5);
    let all: Vec<_> =
        enumerate_respecting_colourings(&c5, &[0, 1, 2, 3, 4], &[ColourSet::palette(3); 5], 25).unwrap().collect();
    assert_eq!(all.len(), 30);
}

#[test]
fn expansion_examples() {
    let (fig3, layout) = expand_diameter_girth(&named::path(4), 1).unwrap();
    assert_eq!((fig3.n(), fig3.m()), (11, 13));
    for (k, &(i, j)) in layout.pairs.iter().enumerate() {
        let x = layout.internal(k).start;
        assert_eq!(fig3.neighbours(x), &[layout.pendant(i), layout.pendant(j)]);
    }
    let cert = certify_expansion(&named::path(4), &fig3, 1, OracleOptions::default());
    assert!(cert.passed);

    let c9 = named::cycle(9);
    let (g, _) = expand_diameter_girth(&c9, 1).unwrap();
    let cert = certify_expansion(&c9, &g, 1, OracleOptions::default());
    assert!(cert.passed, "{cert:?}");
    assert!(cert.equivalence.unwrap().ok);

    let c5 = named::cycle(5);
    let (g, _) = expand_diameter_girth(&c5, 1).unwrap();
    let cert = certify_expansion(&c5, &g, 1, OracleOptions::default());
    assert!(!cert.girth.unwrap().ok);
    assert!(cert.diameter.unwrap().ok);
}

#[test]
fn nae_examples() {
    let single = CnfFormula::new(3, vec![[1, 2, 3]]).unwrap();
    let g = nae3sat_to_graph(&single);
    assert_eq!(g.n(), 10);
    assert!(nae_satisfiable(&single));
    assert!(exact_solve(&g, &ListAssignment::full(10, 3)).unwrap().is_sat());

    // x1, x2, x3 pairwise unequal is impossible over booleans.
    let unsat = CnfFormula::new(3, vec![[1, 1, 2], [-2, -2, -3], [-1, -1, -3]]).unwrap();
    assert!(!nae_evaluate(&unsat, &[true, false, true]).unwrap());
    assert!(!nae_satisfiable(&unsat));
    let cert = certify_nae(&unsat, &nae3sat_to_graph(&unsat), OracleOptions::default());
    assert!(cert.passed);
    assert!(!cert.equivalence.unwrap().gadget_colourable);
}

#[test]
fn spread_and_dominating_examples() {
    let c6 = named::cycle(6);
    let (g, s) = claw_free_spread(&c6).unwrap();
    assert!((2..=3).contains(&s.len()));
    assert!(certify_spread(&c6, &g, OracleOptions::default()).passed);

    assert_eq!(chromatic_number(&add_dominating_vertex(&named::complete(3))).unwrap(), 4);
    let w5 = add_dominating_vertex(&named::cycle(5));
    assert_eq!(chromatic_number(&w5).unwrap(), 4);
    assert_eq!(metric::diameter(&w5), Distance::Finite(2));
    assert_eq!(chromatic_number(&add_dominating_vertex(&Graph::empty(4))).unwrap(), 2);
}
