//! Isomorphism search: distance-profile colouring, colour refinement, then
//! individualization with backtracking over refined cells.

use std::collections::VecDeque;

use super::Graph;

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoOutcome {
    /// `map[v]` is the image in the second graph of vertex `v` of the first.
    Isomorphic(Vec<usize>),
    NotIsomorphic,
    /// The search tree exceeded its node budget.
    Inconclusive { nodes: u64 },
}

impl IsoOutcome {
    pub fn mapping(&self) -> Option<&[usize]> {
        match self {
            IsoOutcome::Isomorphic(map) => Some(map),
            _ => None,
        }
    }
}

pub fn graphs_isomorphic(g1: &Graph, g2: &Graph) -> IsoOutcome {
    graphs_isomorphic_with_budget(g1, g2, DEFAULT_NODE_BUDGET)
}

pub fn graphs_isomorphic_with_budget(g1: &Graph, g2: &Graph, budget: u64) -> IsoOutcome {
    let n = g1.n();
    if n != g2.n() || g1.edge_count() != g2.edge_count() {
        return IsoOutcome::NotIsomorphic;
    }
    if n == 0 {
        return IsoOutcome::Isomorphic(Vec::new());
    }
    let mut search = Search {
        g1,
        g2,
        n,
        adj: (0..n)
            .map(|v| g1.neighbor_list(v))
            .chain((0..n).map(|v| g2.neighbor_list(v).into_iter().map(|w| w + n).collect()))
            .collect(),
        nodes: 0,
        budget,
    };
    let initial = search.profile_colours();
    let Some(colours) = search.refine(initial) else {
        return IsoOutcome::NotIsomorphic;
    };
    match search.descend(colours) {
        Ok(Some(map)) => IsoOutcome::Isomorphic(map),
        Ok(None) => IsoOutcome::NotIsomorphic,
        Err(()) => IsoOutcome::Inconclusive { nodes: search.nodes },
    }
}

struct Search<'a> {
    g1: &'a Graph,
    g2: &'a Graph,
    n: usize,
    /// Disjoint union: vertices of `g2` are shifted by `n`.
    adj: Vec<Vec<usize>>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// Initial colour: degree plus the number of vertices at each distance.
    fn profile_colours(&self) -> Vec<u32> {
        let total = 2 * self.n;
        let profiles: Vec<Vec<usize>> = (0..total)
            .map(|s| {
                let mut dist = vec![usize::MAX; total];
                let mut queue = VecDeque::from([s]);
                dist[s] = 0;
                let mut counts = vec![0usize; self.n + 1];
                while let Some(u) = queue.pop_front() {
                    counts[dist[u]] += 1;
                    for &v in &self.adj[u] {
                        if dist[v] == usize::MAX {
                            dist[v] = dist[u] + 1;
                            queue.push_back(v);
                        }
                    }
                }
                let mut profile = vec![self.adj[s].len()];
                profile.extend(counts);
                profile
            })
            .collect();
        rank(&profiles)
    }

    /// Colour refinement on the union. `None` if the two sides' colour
    /// histograms diverge.
    fn refine(&self, mut colours: Vec<u32>) -> Option<Vec<u32>> {
        let mut classes = distinct(&colours);
        loop {
            let signatures: Vec<(u32, Vec<u32>)> = (0..colours.len())
                .map(|v| {
                    let mut nb: Vec<u32> = self.adj[v].iter().map(|&w| colours[w]).collect();
                    nb.sort_unstable();
                    (colours[v], nb)
                })
                .collect();
            colours = rank(&signatures);
            let now = distinct(&colours);
            if !self.balanced(&colours, now) {
                return None;
            }
            if now == classes {
                return Some(colours);
            }
            classes = now;
        }
    }

    fn balanced(&self, colours: &[u32], classes: usize) -> bool {
        let mut count = vec![0i64; classes];
        for &c in &colours[..self.n] {
            count[c as usize] += 1;
        }
        for &c in &colours[self.n..] {
            count[c as usize] -= 1;
        }
        count.iter().all(|&c| c == 0)
    }

    fn descend(&mut self, colours: Vec<u32>) -> Result<Option<Vec<usize>>, ()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(());
        }
        let classes = distinct(&colours);
        let mut size = vec![0usize; classes];
        for &c in &colours[..self.n] {
            size[c as usize] += 1;
        }
        // Smallest non-singleton cell, ties broken by colour rank.
        let target = (0..classes)
            .filter(|&c| size[c] > 1)
            .min_by_key(|&c| (size[c], c));
        let Some(target) = target else {
            let mut by_colour = vec![0usize; classes];
            for w in 0..self.n {
                by_colour[colours[self.n + w] as usize] = w;
            }
            let map: Vec<usize> = (0..self.n).map(|v| by_colour[colours[v] as usize]).collect();
            return Ok(self.g1.is_isomorphism(self.g2, &map).then_some(map));
        };
        let v = (0..self.n).find(|&v| colours[v] as usize == target).unwrap();
        let candidates: Vec<usize> = (0..self.n)
            .filter(|&w| colours[self.n + w] as usize == target)
            .collect();
        for w in candidates {
            let mut next = colours.clone();
            next[v] = classes as u32;
            next[self.n + w] = classes as u32;
            if let Some(refined) = self.refine(next) {
                if let Some(map) = self.descend(refined)? {
                    return Ok(Some(map));
                }
            }
        }
        Ok(None)
    }
}

fn distinct(colours: &[u32]) -> usize {
    colours.iter().max().map_or(0, |&m| m as usize + 1)
}

/// Replace each item by the rank of its value among the distinct values.
fn rank<T: Ord + Clone>(items: &[T]) -> Vec<u32> {
    let mut sorted = items.to_vec();
    sorted.sort();
    sorted.dedup();
    items
        .iter()
        .map(|it| sorted.binary_search(it).unwrap() as u32)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::difference_graph;
    use crate::group::Group;
    use proptest::prelude::*;

    fn diff(s: &str) -> Graph {
        difference_graph(&Group::build(&s.parse().unwrap()).unwrap())
    }

    #[test]
    fn dihedral_matches_cyclic() {
        let outcome = graphs_isomorphic(&diff("D12"), &diff("Z6"));
        assert!(outcome.mapping().is_some());
    }

    #[test]
    fn k3_is_not_p3() {
        let k3 = Graph::complete(3);
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]);
        assert_eq!(graphs_isomorphic(&k3, &p3), IsoOutcome::NotIsomorphic);
    }

    #[test]
    fn empty_graphs() {
        assert_eq!(
            graphs_isomorphic(&diff("SD16"), &diff("Z8")),
            IsoOutcome::Isomorphic(Vec::new())
        );
    }

    #[test]
    fn regular_non_isomorphic() {
        // C6 vs two triangles: same degree sequence, refinement alone cannot tell.
        let c6 = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let two_k3 = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert_eq!(graphs_isomorphic(&c6, &two_k3), IsoOutcome::NotIsomorphic);
    }

    #[test]
    fn budget_exhaustion_is_inconclusive() {
        // Petersen graph vs itself relabelled: needs at least one branch node beyond the root.
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (i + 5, (i + 2) % 5 + 5));
        let petersen = Graph::from_edges(10, outer.chain(spokes).chain(inner));
        let shuffled = petersen.relabeled(&[3, 7, 1, 9, 0, 2, 8, 4, 6, 5]);
        assert!(matches!(
            graphs_isomorphic_with_budget(&petersen, &shuffled, 1),
            IsoOutcome::Inconclusive { .. }
        ));
        assert!(graphs_isomorphic(&petersen, &shuffled).mapping().is_some());
    }

    proptest! {
        #[test]
        fn finds_mapping_for_relabelled_graphs(
            n in 1usize..9,
            bits in proptest::collection::vec(any::<bool>(), 36),
            seed in any::<u64>(),
        ) {
            let edges = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .enumerate()
                .filter(|(i, _)| bits[*i])
                .map(|(_, e)| e);
            let g = Graph::from_edges(n, edges);
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let h = g.relabeled(&perm);
            let outcome = graphs_isomorphic(&g, &h);
            let map = outcome.mapping().expect("relabelled graph must be isomorphic");
            prop_assert!(g.is_isomorphism(&h, map));
        }
    }
}
