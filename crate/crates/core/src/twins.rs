//! Twin classes: vertices with equal open or equal closed neighbourhoods.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{Group, SylowFactors};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwinKind {
    TrueTwin,
    FalseTwin,
    Singleton,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinPartition {
    /// Sorted vertex lists, ordered by smallest member.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub kinds: Vec<TwinKind>,
}

impl TwinPartition {
    pub fn class_of_vertex(&self, v: usize) -> &[usize] {
        &self.classes[self.class_of[v]]
    }

    /// `Σ (l - 1)` over classes of size `l`.
    pub fn forced_count(&self) -> usize {
        self.classes.iter().map(|c| c.len() - 1).sum()
    }
}

pub fn are_twins(g: &Graph, u: usize, v: usize) -> bool {
    g.neighbors(u) == g.neighbors(v) || g.closed_neighbors(u) == g.closed_neighbors(v)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub fn twin_partition(g: &Graph) -> TwinPartition {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    for closed in [false, true] {
        let mut first: HashMap<FixedBitSet, usize> = HashMap::new();
        for v in 0..n {
            let key = if closed { g.closed_neighbors(v) } else { g.neighbors(v).clone() };
            match first.get(&key) {
                Some(&u) => {
                    let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                    parent[a.max(b)] = a.min(b);
                }
                None => {
                    first.insert(key, v);
                }
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![0; n];
    let mut root_class: HashMap<usize, usize> = HashMap::new();
    for v in 0..n {
        let root = find(&mut parent, v);
        let idx = *root_class.entry(root).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[idx].push(v);
        class_of[v] = idx;
    }
    let kinds = classes
        .iter()
        .map(|c| match c.as_slice() {
            [_] => TwinKind::Singleton,
            [a, b, ..] if g.adjacent(*a, *b) => TwinKind::TrueTwin,
            _ => TwinKind::FalseTwin,
        })
        .collect();
    TwinPartition { classes, class_of, kinds }
}

/// Vertices `(y, e, ..., e)` of the difference graph with `y` in Sylow factor
/// `factor`, `o(y) = o(x) = p^a` and `|<y> ∩ <x>| >= p^{a-1}`.
pub fn predicted_twin_class(
    sylow: &SylowFactors,
    d: &Graph,
    factor: usize,
    x: usize,
) -> Result<Vec<usize>> {
    if sylow.factors.len() < 2 {
        return Err(Error::Precondition("needs at least two Sylow factors".into()));
    }
    let Some(sf) = sylow.factors.get(factor) else {
        return Err(Error::Precondition(format!("no Sylow factor {factor}")));
    };
    let p = &sf.group;
    if x == p.identity() || x >= p.order() {
        return Err(Error::Precondition("x must be a non-identity element of the factor".into()));
    }
    let embed = |y: usize| {
        let mut coords = vec![0; sylow.factors.len()];
        coords[factor] = y;
        sylow.element(&coords)
    };
    if d.vertex_of(embed(x)).is_none() {
        return Err(Error::Precondition(format!(
            "{} is not a vertex of the difference graph",
            p.label(x)
        )));
    }
    let order = p.element_order(x);
    let threshold = (order / sf.prime as u32) as usize;
    let gx = p.generated_subgroup(x);
    let mut out: Vec<usize> = (1..p.order())
        .filter(|&y| p.element_order(y) == order)
        .filter(|&y| {
            let gy = p.generated_subgroup(y);
            gy.members.iter().filter(|&&m| gx.contains(m)).count() >= threshold
        })
        .filter_map(|y| d.vertex_of(embed(y)))
        .collect();
    out.sort_unstable();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NearTwin {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

/// Ordered pairs with `N(x) = N(y) ∪ {z}` and `z ∉ N(y)`.
pub fn near_twin_pairs(g: &Graph) -> Vec<NearTwin> {
    let mut out = Vec::new();
    for x in 0..g.n() {
        for y in 0..g.n() {
            if x == y || !g.neighbors(y).is_subset(g.neighbors(x)) {
                continue;
            }
            let mut extra = g.neighbors(x).clone();
            extra.difference_with(g.neighbors(y));
            if extra.count_ones(..) == 1 {
                let z = extra.ones().next().unwrap();
                out.push(NearTwin { x, y, z });
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InvolutionCheck {
    pub holds: bool,
    /// No involution of `G` is a vertex of the difference graph, so nothing was checked.
    pub vacuous: bool,
}

/// For every involution `l` that is a vertex: `G` has a unique involution
/// iff the twin class of `l` is a singleton.
pub fn involution_singleton_check(group: &Group, d: &Graph, p: &TwinPartition) -> InvolutionCheck {
    let involutions: Vec<usize> = (0..group.order())
        .filter(|&x| group.element_order(x) == 2)
        .collect();
    let unique = involutions.len() == 1;
    let vertices: Vec<usize> = involutions.iter().filter_map(|&l| d.vertex_of(l)).collect();
    if vertices.is_empty() {
        return InvolutionCheck { holds: true, vacuous: true };
    }
    let holds = vertices
        .iter()
        .all(|&v| unique == (p.class_of_vertex(v).len() == 1));
    InvolutionCheck { holds, vacuous: false }
}
