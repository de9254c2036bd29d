use fixedbitset::FixedBitSet;

use super::{Graph, GraphKind, Vertex};
use crate::error::{Error, Result};
use crate::group::Group;

fn vertex(group: &Group, x: usize) -> Vertex {
    Vertex {
        element: x,
        label: group.label(x),
        order: group.element_order(x),
    }
}

fn full_graph(group: &Group, kind: GraphKind, adj: Vec<FixedBitSet>) -> Graph {
    let vertices = (0..group.order()).map(|x| vertex(group, x)).collect();
    Graph::from_rows(format!("{} {kind}", group.name()), kind, vertices, adj, Vec::new())
}

fn power_rows(group: &Group) -> Vec<FixedBitSet> {
    let n = group.order();
    let mut adj = vec![FixedBitSet::with_capacity(n); n];
    for (x, powers) in group.power_lists().iter().enumerate() {
        for &y in powers {
            let y = y as usize;
            if y != x {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
    }
    adj
}

fn enhanced_rows(group: &Group) -> Vec<FixedBitSet> {
    let n = group.order();
    let mut adj = vec![FixedBitSet::with_capacity(n); n];
    for c in group.maximal_cyclic_subgroups() {
        let mut members = FixedBitSet::with_capacity(n);
        members.extend(c.members.iter().copied());
        for &x in &c.members {
            adj[x].union_with(&members);
        }
    }
    for (x, row) in adj.iter_mut().enumerate() {
        row.set(x, false);
    }
    adj
}

/// `x ~ y` iff `x != y` and one lies in the cyclic subgroup generated by the other.
pub fn power_graph(group: &Group) -> Graph {
    full_graph(group, GraphKind::Power, power_rows(group))
}

/// `x ~ y` iff `x != y` and some maximal cyclic subgroup contains both.
pub fn enhanced_power_graph(group: &Group) -> Graph {
    full_graph(group, GraphKind::Enhanced, enhanced_rows(group))
}

/// Enhanced power graph edges minus power graph edges, with isolated
/// vertices deleted and recorded in `removed_vertices`.
pub fn difference_graph(group: &Group) -> Graph {
    let power = power_rows(group);
    let mut diff = enhanced_rows(group);
    for (row, p) in diff.iter_mut().zip(&power) {
        row.difference_with(p);
    }
    let keep: Vec<usize> = (0..group.order()).filter(|&x| !diff[x].is_clear()).collect();
    let removed = (0..group.order())
        .filter(|&x| diff[x].is_clear())
        .map(|x| vertex(group, x))
        .collect();
    let mut position = vec![usize::MAX; group.order()];
    for (i, &x) in keep.iter().enumerate() {
        position[x] = i;
    }
    let adj = keep
        .iter()
        .map(|&x| {
            let mut row = FixedBitSet::with_capacity(keep.len());
            row.extend(diff[x].ones().map(|y| position[y]));
            row
        })
        .collect();
    let vertices = keep.iter().map(|&x| vertex(group, x)).collect();
    Graph::from_rows(
        format!("{} {}", group.name(), GraphKind::Difference),
        GraphKind::Difference,
        vertices,
        adj,
        removed,
    )
}

/// `u ↠ v`: `v` lies in `<u>` but `u` does not lie in `<v>`.
fn strictly_generates(group: &Group, u: usize, v: usize) -> bool {
    group.contains_power(u, v) && !group.contains_power(v, u)
}

fn share_cyclic(group: &Group, u: usize, v: usize) -> bool {
    group
        .maximal_cyclic_subgroups()
        .iter()
        .any(|c| c.contains(u) && c.contains(v))
}

/// Componentwise adjacency in the difference graph of `P_1 x ... x P_k`:
/// there are distinct `i`, `j` with `x_i ↠ y_i` and `y_j ↠ x_j`, and every
/// other coordinate pair lies in a common cyclic subgroup.
pub fn nilpotent_difference_adjacent(sylow: &[&Group], x: &[usize], y: &[usize]) -> Result<bool> {
    for t in [x, y] {
        if t.len() != sylow.len() {
            return Err(Error::Arity { expected: sylow.len(), got: t.len() });
        }
    }
    let k = sylow.len();
    let forward: Vec<bool> = (0..k).map(|i| strictly_generates(sylow[i], x[i], y[i])).collect();
    let backward: Vec<bool> = (0..k).map(|i| strictly_generates(sylow[i], y[i], x[i])).collect();
    for i in (0..k).filter(|&i| forward[i]) {
        for j in (0..k).filter(|&j| j != i && backward[j]) {
            let rest_ok = (0..k)
                .filter(|&l| l != i && l != j)
                .all(|l| share_cyclic(sylow[l], x[l], y[l]));
            if rest_ok {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
