use fixedbitset::FixedBitSet;

use super::{Graph, GraphKind, Vertex};

/// Strong product: vertex `(a, b)` sits at `a * |V(h)| + b`, and `(a, b) ~ (c, d)`
/// iff each coordinate pair is equal or adjacent, and the pairs differ.
pub fn strong_product(g: &Graph, h: &Graph) -> Graph {
    let (n, m) = (g.n(), h.n());
    let closed_h: Vec<FixedBitSet> = (0..m).map(|b| h.closed_neighbors(b)).collect();
    let mut adj = Vec::with_capacity(n * m);
    for a in 0..n {
        let closed_a = g.closed_neighbors(a);
        for b in 0..m {
            let mut row = FixedBitSet::with_capacity(n * m);
            for c in closed_a.ones() {
                row.extend(closed_h[b].ones().map(|d| c * m + d));
            }
            row.set(a * m + b, false);
            adj.push(row);
        }
    }
    let vertices = (0..n)
        .flat_map(|a| (0..m).map(move |b| (a, b)))
        .enumerate()
        .map(|(i, (a, b))| Vertex {
            element: i,
            label: format!("({},{})", g.vertices()[a].label, h.vertices()[b].label),
            order: lcm(g.vertices()[a].order, h.vertices()[b].order),
        })
        .collect();
    let name = format!("({}) x ({})", g.name, h.name);
    Graph::from_rows(name, GraphKind::StrongProduct, vertices, adj, Vec::new())
}

fn lcm(a: u32, b: u32) -> u32 {
    if a == 0 || b == 0 {
        return 0;
    }
    let g = crate::formulas::gcd(u64::from(a), u64::from(b)) as u32;
    a / g * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enhanced_power_graph, graphs_isomorphic};
    use crate::group::Group;

    #[test]
    fn complete_factors() {
        let k6 = strong_product(&Graph::complete(2), &Graph::complete(3));
        assert_eq!(k6.n(), 6);
        assert_eq!(k6.edge_count(), 15);
    }

    #[test]
    fn single_vertex_is_identity() {
        let p2 = Graph::from_edges(2, [(0, 1)]);
        let prod = strong_product(&p2, &Graph::complete(1));
        assert_eq!(prod.edges(), vec![(0, 1)]);
    }

    #[test]
    fn strong_product_rule() {
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]);
        let prod = strong_product(&path, &path);
        // (0,0) ~ (1,1), (0,0) !~ (2,0), (1,1) is universal
        assert!(prod.adjacent(0, 4));
        assert!(!prod.adjacent(0, 6));
        assert_eq!(prod.degree(4), 8);
        assert!(prod.is_simple());
    }

    #[test]
    fn enhanced_z12_factors() {
        let build = |s: &str| Group::build(&s.parse().unwrap()).unwrap();
        let lhs = strong_product(
            &enhanced_power_graph(&build("Z4")),
            &enhanced_power_graph(&build("Z3")),
        );
        let rhs = enhanced_power_graph(&build("Z12"));
        assert_eq!(lhs.edge_count(), 66);
        assert!(graphs_isomorphic(&lhs, &rhs).mapping().is_some());
    }
}
