use super::{Answer, ColourSet, Colouring, ColouringError, ListAssignment};
use crate::graph::Graph;

/// Exact list colouring of a tree by bottom-up feasible colour sets.
pub fn solve_tree_list(g: &Graph, lists: &ListAssignment) -> Result<Answer, ColouringError> {
    lists.check_len(g)?;
    solve_tree_sets(g, lists.lists())
}

pub(crate) fn solve_tree_sets(g: &Graph, lists: &[ColourSet]) -> Result<Answer, ColouringError> {
    if !g.is_tree() {
        return Err(ColouringError::NotATree);
    }
    let n = g.n();
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    parent[0] = 0;
    order.push(0);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &w in g.neighbours(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                order.push(w);
            }
        }
    }
    let mut feasible = lists.to_vec();
    for &v in order.iter().rev() {
        let fv = feasible[v];
        let kept = fv.iter().filter(|&c| {
            g.neighbours(v).iter().all(|&u| parent[u] != v || !feasible[u].without(c).is_empty())
        });
        feasible[v] = ColourSet::try_from_colours(kept).expect("subset of a valid list");
    }
    let Some(root_colour) = feasible[0].first() else {
        return Ok(Answer::Unsat);
    };
    let mut colours = vec![0; n];
    colours[0] = root_colour;
    for &v in &order[1..] {
        colours[v] = feasible[v].without(colours[parent[v]]).first().expect("feasible set admits a colour");
    }
    Ok(Answer::Sat(Colouring::from_total(colours)))
}

/// Exact list colouring of a cycle: fix the colour of one vertex, then run a
/// feasible-set sweep along the remaining path.
pub fn solve_cycle_list(g: &Graph, lists: &ListAssignment) -> Result<Answer, ColouringError> {
    lists.check_len(g)?;
    solve_cycle_sets(g, lists.lists())
}

pub(crate) fn solve_cycle_sets(g: &Graph, lists: &[ColourSet]) -> Result<Answer, ColouringError> {
    if !g.is_cycle() {
        return Err(ColouringError::NotACycle);
    }
    let n = g.n();
    let mut ring = Vec::with_capacity(n);
    ring.push(0);
    let mut prev = 0;
    let mut cur = g.neighbours(0)[0];
    while cur != 0 {
        ring.push(cur);
        let next = g.neighbours(cur).iter().copied().find(|&w| w != prev).unwrap();
        prev = cur;
        cur = next;
    }
    let mut sets = vec![ColourSet::EMPTY; n];
    for a in lists[0].iter() {
        sets[0] = ColourSet::singleton(a);
        for i in 1..n {
            let before = sets[i - 1];
            let here = lists[ring[i]];
            sets[i] = match before.len() {
                0 => ColourSet::EMPTY,
                1 => here.difference(before),
                _ => here,
            };
        }
        sets[n - 1].remove(a);
        let Some(last) = sets[n - 1].first() else {
            continue;
        };
        let mut colours = vec![0; n];
        colours[ring[n - 1]] = last;
        let mut next = last;
        for i in (0..n - 1).rev() {
            next = sets[i].without(next).first().expect("sweep keeps a compatible colour");
            colours[ring[i]] = next;
        }
        return Ok(Answer::Sat(Colouring::from_total(colours)));
    }
    Ok(Answer::Unsat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::{exact_solve, validate};
    use crate::graph::named;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tree_cases() {
        let g = Graph::empty(1);
        let l = ListAssignment::from_lists([Vec::<u32>::new()]).unwrap();
        assert_eq!(solve_tree_list(&g, &l).unwrap(), Answer::Unsat);
        let star = named::star(5);
        let mut lists = vec![vec![1]];
        lists.extend(std::iter::repeat_n(vec![1, 2], 5));
        let l = ListAssignment::from_lists(lists).unwrap();
        let ans = solve_tree_list(&star, &l).unwrap();
        assert_eq!(ans.colouring().unwrap(), &Colouring::from_total(vec![1, 2, 2, 2, 2, 2]));
        assert_eq!(solve_tree_list(&named::cycle(4), &l), Err(ColouringError::LengthMismatch { expected: 4, found: 6 }));
        assert_eq!(solve_tree_list(&named::cycle(4), &ListAssignment::full(4, 2)), Err(ColouringError::NotATree));
    }

    #[test]
    fn cycle_cases() {
        let c4 = named::cycle(4);
        let l = ListAssignment::full(4, 2);
        let ans = solve_cycle_list(&c4, &l).unwrap();
        validate(&c4, &l, ans.colouring().unwrap()).unwrap();
        assert_eq!(solve_cycle_list(&named::cycle(5), &ListAssignment::full(5, 2)).unwrap(), Answer::Unsat);
        assert_eq!(solve_cycle_list(&named::path(4), &l), Err(ColouringError::NotACycle));
    }

    fn random_lists(rng: &mut ChaCha8Rng, n: usize) -> ListAssignment {
        let lists: Vec<Vec<u32>> =
            (0..n).map(|_| (1..=3).filter(|_| rng.gen_bool(0.6)).collect()).collect();
        ListAssignment::from_lists(lists).unwrap()
    }

    #[test]
    fn agree_with_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let n = rng.gen_range(1..=10);
            let t = crate::harness::random_tree(&mut rng, n);
            let l = random_lists(&mut rng, n);
            let fast = solve_tree_list(&t, &l).unwrap();
            assert_eq!(fast.is_sat(), exact_solve(&t, &l).unwrap().is_sat());
            if let Some(c) = fast.colouring() {
                validate(&t, &l, c).unwrap();
            }
            let k = rng.gen_range(3..=10);
            let c = named::cycle(k);
            let l = random_lists(&mut rng, k);
            let fast = solve_cycle_list(&c, &l).unwrap();
            assert_eq!(fast.is_sat(), exact_solve(&c, &l).unwrap().is_sat());
            if let Some(col) = fast.colouring() {
                validate(&c, &l, col).unwrap();
            }
        }
    }
}
