//! Distances, resolving sets and exact metric dimension.
//!
//! The exact solver fixes all but one vertex of every twin class (any
//! resolving set must contain them, and swapping twins is an automorphism),
//! then enumerates subsets of the remaining class representatives by
//! increasing size, lexicographically within a size.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formulas::nbh_special_form;
use crate::graph::Graph;
use crate::group::{Group, SylowFactors};
use crate::twins::{twin_partition, TwinPartition};

pub const INFINITY: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `INFINITY` between different components.
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    /// Whether distance vectors to `w` separate every pair of vertices.
    pub fn resolves(&self, w: &[usize]) -> bool {
        let mut refinement = Refinement::new(self.n);
        for &s in w {
            refinement.refine(self.row(s));
        }
        refinement.is_discrete()
    }
}

fn bfs(g: &Graph, source: usize) -> Vec<u32> {
    let mut dist = vec![INFINITY; g.n()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for v in g.neighbors(u).ones() {
            if dist[v] == INFINITY {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let rows: Vec<Vec<u32>> = (0..g.n()).into_par_iter().map(|s| bfs(g, s)).collect();
    DistanceMatrix { n: g.n(), dist: rows.concat() }
}

pub fn is_resolving(g: &Graph, w: &[usize]) -> bool {
    all_pairs_distances(g).resolves(w)
}

/// Partition of the vertex set by distance vectors to the landmarks seen so far.
#[derive(Debug, Clone)]
struct Refinement {
    class: Vec<u32>,
    classes: usize,
}

impl Refinement {
    fn new(n: usize) -> Self {
        Refinement { class: vec![0; n], classes: usize::from(n > 0) }
    }

    fn refine(&mut self, distances: &[u32]) {
        let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
        for (c, &d) in self.class.iter_mut().zip(distances) {
            let next = ids.len() as u32;
            *c = *ids.entry((*c, d)).or_insert(next);
        }
        self.classes = ids.len();
    }

    fn is_discrete(&self) -> bool {
        self.classes == self.class.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolvingWitness {
    /// Sorted vertex positions.
    pub set: Vec<usize>,
    pub size: usize,
    pub optimal: bool,
    /// Vertices fixed by the twin reduction before the search.
    pub forced_by_twins: Vec<usize>,
    pub search_nodes_expanded: u64,
    /// Empty or single-vertex graph; the dimension is 0 by convention.
    pub degenerate: bool,
}

/// Minimum resolving set by twin-reduced exhaustive search.
pub fn metric_dimension_exact(g: &Graph) -> ResolvingWitness {
    let partition = twin_partition(g);
    metric_dimension_with_partition(g, &partition)
}

pub fn metric_dimension_with_partition(g: &Graph, partition: &TwinPartition) -> ResolvingWitness {
    if g.n() <= 1 {
        return ResolvingWitness {
            set: Vec::new(),
            size: 0,
            optimal: true,
            forced_by_twins: Vec::new(),
            search_nodes_expanded: 0,
            degenerate: true,
        };
    }
    let dm = all_pairs_distances(g);
    let mut forced: Vec<usize> = Vec::new();
    let mut free: Vec<usize> = Vec::new();
    for class in &partition.classes {
        let (last, rest) = class.split_last().expect("classes are nonempty");
        forced.extend_from_slice(rest);
        free.push(*last);
    }
    forced.sort_unstable();
    free.sort_unstable();

    let mut base = Refinement::new(g.n());
    for &s in &forced {
        base.refine(dm.row(s));
    }
    let mut nodes = 0u64;
    for k in 0..=free.len() {
        let mut chosen = Vec::with_capacity(k);
        if let Some(extra) = search(&dm, &free, 0, k, &base, &mut chosen, &mut nodes) {
            let mut set = forced.clone();
            set.extend(extra);
            set.sort_unstable();
            return ResolvingWitness {
                size: set.len(),
                set,
                optimal: true,
                forced_by_twins: forced,
                search_nodes_expanded: nodes,
                degenerate: false,
            };
        }
    }
    unreachable!("the full vertex set always resolves")
}

/// First `k`-subset of `free[start..]` (lexicographic) completing `current`
/// to a resolving set.
fn search(
    dm: &DistanceMatrix,
    free: &[usize],
    start: usize,
    k: usize,
    current: &Refinement,
    chosen: &mut Vec<usize>,
    nodes: &mut u64,
) -> Option<Vec<usize>> {
    *nodes += 1;
    if k == 0 {
        return current.is_discrete().then(|| chosen.clone());
    }
    for i in start..=free.len() - k {
        let mut next = current.clone();
        next.refine(dm.row(free[i]));
        chosen.push(free[i]);
        let hit = search(dm, free, i + 1, k - 1, &next, chosen, nodes);
        chosen.pop();
        if hit.is_some() {
            return hit;
        }
    }
    None
}

/// The explicit resolving set: every vertex except the minimum-label
/// representative of each twin class, plus the unique involution when the
/// group has the special form.
pub fn constructed_resolving_set(group: &Group, d: &Graph, partition: &TwinPartition) -> Result<Vec<usize>> {
    if d.is_empty() {
        return Err(Error::EmptyDifferenceGraph);
    }
    let sylow = SylowFactors::from_group(group)?;
    let mut keep = vec![true; d.n()];
    for class in &partition.classes {
        keep[class[0]] = false;
    }
    if nbh_special_form(&sylow) {
        let involution = (0..group.order())
            .find(|&x| group.element_order(x) == 2)
            .and_then(|x| d.vertex_of(x))
            .ok_or_else(|| Error::Precondition("special form without an involution vertex".into()))?;
        keep[involution] = true;
    }
    Ok((0..d.n()).filter(|&v| keep[v]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::difference_graph;
    use crate::group::GroupSpec;

    fn diff(s: &str) -> (Group, Graph) {
        let group = Group::build(&s.parse::<GroupSpec>().unwrap()).unwrap();
        let d = difference_graph(&group);
        (group, d)
    }

    fn v(d: &Graph, elements: &[usize]) -> Vec<usize> {
        elements.iter().map(|&e| d.vertex_of(e).unwrap()).collect()
    }

    #[test]
    fn distances() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]);
        assert_eq!(all_pairs_distances(&p3).get(0, 2), 2);
        let (_, d) = diff("Z12");
        let dm = all_pairs_distances(&d);
        assert_eq!(dm.get(d.vertex_of(6).unwrap(), d.vertex_of(10).unwrap()), 3);
        let split = Graph::from_edges(4, [(0, 1), (2, 3)]);
        let dm = all_pairs_distances(&split);
        assert_eq!(dm.get(0, 2), INFINITY);
        assert_eq!(dm.get(3, 2), 1);
    }

    #[test]
    fn resolving_examples() {
        let (_, d) = diff("Z12");
        assert!(!is_resolving(&d, &v(&d, &[8, 9, 10])));
        assert!(is_resolving(&d, &v(&d, &[8, 9, 10, 6])));
        let all: Vec<usize> = (0..d.n()).collect();
        assert!(is_resolving(&d, &all));
    }

    #[test]
    fn infinity_is_a_distinct_value() {
        // Two isolated edges: landmark 0 gives (0,1,INF,INF); 2 and 3 are tied.
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]);
        assert!(!is_resolving(&g, &[0]));
        assert!(is_resolving(&g, &[0, 2]));
        assert_eq!(metric_dimension_exact(&g).size, 2);
    }

    #[test]
    fn exact_examples() {
        assert_eq!(metric_dimension_exact(&diff("Z6").1).size, 1);
        let w = metric_dimension_exact(&diff("Z12").1);
        assert_eq!(w.size, 4);
        assert!(w.optimal);
        assert_eq!(metric_dimension_exact(&diff("Z30").1).size, 15);
    }

    #[test]
    fn degenerate_graphs() {
        let w = metric_dimension_exact(&Graph::from_edges(0, []));
        assert_eq!((w.size, w.degenerate), (0, true));
        let w = metric_dimension_exact(&Graph::complete(1));
        assert_eq!((w.size, w.degenerate), (0, true));
        assert_eq!(metric_dimension_exact(&Graph::complete(2)).size, 1);
    }

    #[test]
    fn twin_lower_bound_and_witness() {
        for s in ["Z12", "Z30", "Z2xZ2xZ3", "Q8xZ3", "Z36"] {
            let (_, d) = diff(s);
            let p = twin_partition(&d);
            let w = metric_dimension_exact(&d);
            assert!(w.size >= p.forced_count(), "{s}");
            assert!(is_resolving(&d, &w.set), "{s}");
        }
    }

    #[test]
    fn constructed_set_examples() {
        for (s, size) in [("Z12", 4), ("Z30", 15), ("Z10", 3)] {
            let (group, d) = diff(s);
            let p = twin_partition(&d);
            let set = constructed_resolving_set(&group, &d, &p).unwrap();
            assert_eq!(set.len(), size, "{s}");
            assert!(is_resolving(&d, &set), "{s}");
        }
        let (group, d) = diff("Z8");
        assert!(matches!(
            constructed_resolving_set(&group, &d, &twin_partition(&d)),
            Err(Error::EmptyDifferenceGraph)
        ));
    }
}
