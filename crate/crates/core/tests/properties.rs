use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use diamchrome::colouring::{
    exact_solve, solve_cycle_list, solve_tree_list, solve_two_list, validate, ListAssignment,
};
use diamchrome::gadgets::{nae3sat_to_graph, nae_satisfiable, parse_dimacs, CnfFormula};
use diamchrome::harness::{random_connected_graph, random_graph, random_lists, random_tree, random_two_list_instance};
use diamchrome::metric::{self, bfs_layers, distance, find_short_cycle, is_induced_cycle};
use diamchrome::recognition::{
    contains_induced, is_almost_k1r_free, is_induced_embedding, is_locally_claw_free, is_quasi_claw_free,
    PolyadSpec,
};
use diamchrome::solvers::RamseyBound;
use diamchrome::{Distance, Graph};

fn connected(seed: u64, n: usize, density: f64) -> Graph {
    random_connected_graph(&mut ChaCha8Rng::seed_from_u64(seed), n, density)
}

fn polyad() -> impl Strategy<Value = PolyadSpec> {
    prop_oneof![
        (2usize..5).prop_map(|r| PolyadSpec::Star { r }),
        (3usize..5, 1usize..3).prop_map(|(r, l)| PolyadSpec::SubdividedStar { r, l }),
        Just(PolyadSpec::CHAIR),
        (3usize..6).prop_map(|t| PolyadSpec::Path { t }),
        (3usize..6).prop_map(|t| PolyadSpec::Cycle { t }),
        (2usize..5).prop_map(|t| PolyadSpec::Clique { t }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn distances_bounded_by_diameter(seed in any::<u64>(), n in 1usize..14, density in 0.0f64..0.7) {
        let g = connected(seed, n, density);
        let d = metric::diameter(&g);
        for u in g.vertices() {
            for v in g.vertices() {
                prop_assert!(distance(&g, u, v).unwrap() <= d);
            }
        }
    }

    #[test]
    fn girth_at_most_twice_diameter_plus_one(seed in any::<u64>(), n in 3usize..14, density in 0.0f64..0.7) {
        let g = connected(seed, n, density);
        prop_assume!(!g.is_tree());
        let d = metric::diameter(&g).finite().unwrap();
        let girth = metric::girth(&g);
        prop_assert!(girth.at_most(2 * d + 1));
        if g.is_bipartite() {
            prop_assert!(girth.at_most(2 * d));
        }
        let cycle = find_short_cycle(&g, d).unwrap().unwrap();
        prop_assert!(cycle.len() <= 2 * d + 1);
        prop_assert!(is_induced_cycle(&g, &cycle));
    }

    #[test]
    fn layers_are_distances_to_the_seed(seed in any::<u64>(), n in 1usize..14, density in 0.0f64..0.6, k in 1usize..4) {
        let g = connected(seed, n, density);
        let seeds: Vec<usize> = (0..k.min(n)).collect();
        let layering = bfs_layers(&g, &seeds).unwrap();
        for v in g.vertices() {
            let nearest = seeds.iter().map(|&s| distance(&g, v, s).unwrap()).min().unwrap();
            prop_assert_eq!(Distance::Finite(layering.layer_of[v]), nearest);
            prop_assert!(layering.layers[layering.layer_of[v]].contains(&v));
        }
    }

    #[test]
    fn embeddings_are_induced(seed in any::<u64>(), n in 1usize..10, density in 0.1f64..0.9, spec in polyad()) {
        let g = random_graph(&mut ChaCha8Rng::seed_from_u64(seed), n, density);
        if let Some(map) = contains_induced(&g, &spec).unwrap() {
            prop_assert!(is_induced_embedding(&g, &spec.to_graph().unwrap(), &map));
        }
    }

    #[test]
    fn class_hierarchy(seed in any::<u64>(), n in 1usize..10, density in 0.2f64..0.95) {
        let g = connected(seed, n, density);
        let claw_free = contains_induced(&g, &PolyadSpec::CLAW).unwrap().is_none();
        let almost = is_almost_k1r_free(&g, 3).unwrap().member;
        let locally = is_locally_claw_free(&g).member;
        if claw_free {
            prop_assert!(is_quasi_claw_free(&g).member);
            prop_assert!(almost);
            prop_assert!(locally);
        }
        if almost {
            prop_assert!(locally);
        }
    }

    #[test]
    fn two_list_matches_oracle(seed in any::<u64>()) {
        let (g, lists) = random_two_list_instance(&mut ChaCha8Rng::seed_from_u64(seed), 8);
        let fast = solve_two_list(&g, &lists).unwrap();
        prop_assert_eq!(fast.is_sat(), exact_solve(&g, &lists).unwrap().is_sat());
        if let Some(c) = fast.colouring() {
            prop_assert!(validate(&g, &lists, c).is_ok());
        }
    }

    #[test]
    fn tree_and_cycle_programs_match_oracle(seed in any::<u64>(), n in 3usize..11, k in 1u32..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_tree(&mut rng, n);
        let lists = ListAssignment::new(random_lists(&mut rng, n, k, k as usize), Some(k)).unwrap();
        let answer = solve_tree_list(&t, &lists).unwrap();
        prop_assert_eq!(answer.is_sat(), exact_solve(&t, &lists).unwrap().is_sat());
        if let Some(c) = answer.colouring() {
            prop_assert!(validate(&t, &lists, c).is_ok());
        }
        let c = diamchrome::graph::named::cycle(n);
        let answer = solve_cycle_list(&c, &lists).unwrap();
        prop_assert_eq!(answer.is_sat(), exact_solve(&c, &lists).unwrap().is_sat());
        if let Some(col) = answer.colouring() {
            prop_assert!(validate(&c, &lists, col).is_ok());
        }
    }

    #[test]
    fn full_palette_matches_chromatic_bound(seed in any::<u64>(), n in 1usize..9, density in 0.1f64..0.9, k in 1u32..5) {
        let g = random_graph(&mut ChaCha8Rng::seed_from_u64(seed), n, density);
        let chi = diamchrome::colouring::chromatic_number(&g).unwrap();
        let sat = exact_solve(&g, &ListAssignment::full(n, k)).unwrap().is_sat();
        prop_assert_eq!(sat, chi <= k as usize);
    }

    #[test]
    fn ramsey_bounds_symmetric_and_monotone(k in 1usize..6, m in 1usize..10) {
        let b = RamseyBound::new(k, m);
        prop_assert_eq!(b.value, RamseyBound::new(m, k).value);
        if k >= 2 {
            prop_assert!(b.value >= RamseyBound::new(k - 1, m).value);
        }
    }

    #[test]
    fn dimacs_round_trip(clauses in proptest::collection::vec(proptest::array::uniform3(1i32..7), 1..4), signs in any::<u32>()) {
        let clauses: Vec<[i32; 3]> = clauses
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                let mut c = c;
                for (j, l) in c.iter_mut().enumerate() {
                    if signs >> (3 * i + j) & 1 == 1 {
                        *l = -*l;
                    }
                }
                c
            })
            .collect();
        if let Ok(f) = CnfFormula::new(6, clauses) {
            prop_assert_eq!(parse_dimacs(&f.to_dimacs()).unwrap(), f.clone());
            let g = nae3sat_to_graph(&f);
            prop_assert_eq!(g.n(), 2 * 6 + 1 + 3 * f.clauses().len());
            let colourable = exact_solve(&g, &ListAssignment::full(g.n(), 3)).unwrap().is_sat();
            prop_assert_eq!(colourable, nae_satisfiable(&f));
        }
    }
}

#[test]
fn ramsey_table_entries() {
    let known = [
        (3, 3, 6),
        (3, 4, 9),
        (3, 5, 14),
        (3, 6, 18),
        (3, 7, 23),
        (3, 8, 28),
        (3, 9, 36),
        (4, 4, 18),
        (4, 5, 25),
    ];
    for (k, m, r) in known {
        let b = RamseyBound::new(k, m);
        assert_eq!((b.value, b.exact), (r, true), "R({k},{m})");
    }
    assert!(!RamseyBound::new(5, 5).exact);
    assert!(RamseyBound::new(5, 5).value >= 43);
}

