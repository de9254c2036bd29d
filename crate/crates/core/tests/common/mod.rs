//! Independent reference implementations used by the integration tests.
//! Everything here is deliberately naive.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use ggmd_core::Group;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub type EdgeList = (usize, Vec<(usize, usize)>);

pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in edges {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    adj
}

/// BFS distances; `None` for unreachable vertices.
pub fn distances(adj: &[Vec<bool>]) -> Vec<Vec<Option<u32>>> {
    let n = adj.len();
    (0..n)
        .map(|s| {
            let mut d = vec![None; n];
            d[s] = Some(0);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in 0..n {
                    if adj[u][v] && d[v].is_none() {
                        d[v] = Some(d[u].unwrap() + 1);
                        queue.push_back(v);
                    }
                }
            }
            d
        })
        .collect()
}

/// Metric dimension by trying every subset in order of size.
pub fn naive_metric_dimension(n: usize, edges: &[(usize, usize)]) -> usize {
    let d = distances(&adjacency(n, edges));
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        let w: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let vectors: BTreeSet<Vec<Option<u32>>> =
            (0..n).map(|v| w.iter().map(|&s| d[s][v]).collect()).collect();
        if vectors.len() == n {
            return w.len();
        }
    }
    unreachable!("the full vertex set always resolves")
}

pub fn random_graphs(seed: u64, count: usize, max_n: usize) -> Vec<EdgeList> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            let p: f64 = rng.gen_range(0.1..0.9);
            let edges = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            (n, edges)
        })
        .collect()
}

/// Every labelled graph on `n` vertices.
pub fn all_graphs(n: usize) -> Vec<EdgeList> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0..1u64 << pairs.len())
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            (n, edges)
        })
        .collect()
}

pub fn powers(g: &Group, x: usize) -> BTreeSet<usize> {
    (0..u64::from(g.element_order(x))).map(|k| g.pow(x, k)).collect()
}

/// Generators of cyclic subgroups not properly contained in another cyclic subgroup.
pub fn maximal_generators(g: &Group) -> BTreeSet<usize> {
    let gens: Vec<BTreeSet<usize>> = (0..g.order()).map(|x| powers(g, x)).collect();
    (0..g.order())
        .filter(|&x| !gens.iter().any(|s| s.len() > gens[x].len() && gens[x].is_subset(s)))
        .collect()
}

/// Adjacency matrices of the power and enhanced power graphs, from the group alone.
pub fn power_and_enhanced(g: &Group) -> (Vec<Vec<bool>>, Vec<Vec<bool>>) {
    let n = g.order();
    let gens: Vec<BTreeSet<usize>> = (0..n).map(|x| powers(g, x)).collect();
    let mut power = vec![vec![false; n]; n];
    let mut enhanced = vec![vec![false; n]; n];
    for z in 0..n {
        for &x in &gens[z] {
            if x != z {
                power[x][z] = true;
                power[z][x] = true;
            }
            for &y in &gens[z] {
                if x != y {
                    enhanced[x][y] = true;
                }
            }
        }
    }
    (power, enhanced)
}

/// Difference adjacency over group elements, and which elements keep a neighbour.
pub fn difference(g: &Group) -> (Vec<Vec<bool>>, Vec<usize>) {
    let (p, e) = power_and_enhanced(g);
    let n = g.order();
    let d: Vec<Vec<bool>> = (0..n).map(|x| (0..n).map(|y| e[x][y] && !p[x][y]).collect()).collect();
    let kept = (0..n).filter(|&x| d[x].iter().any(|&b| b)).collect();
    (d, kept)
}

/// Number of classes of the "twin" relation among the given vertices.
pub fn twin_class_count(adj: &[Vec<bool>], vertices: &[usize]) -> usize {
    let open = |x: usize| -> Vec<bool> { vertices.iter().map(|&y| adj[x][y]).collect() };
    let closed = |x: usize| -> Vec<bool> { vertices.iter().map(|&y| adj[x][y] || x == y).collect() };
    let mut reps: Vec<usize> = Vec::new();
    for &x in vertices {
        if !reps.iter().any(|&r| open(r) == open(x) || closed(r) == closed(x)) {
            reps.push(x);
        }
    }
    reps.len()
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while n > 1 {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    out
}

pub fn phi(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

pub fn tau(n: u64) -> u64 {
    (1..=n).filter(|d| n % d == 0).count() as u64
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

pub fn is_prime_power(n: u64) -> bool {
    factorize(n).len() == 1
}

/// `n - φ(n) - τ(n) + 2` when `n = 2^k p` with `k > 1` and `p` an odd prime, otherwise `+ 1`.
pub fn cyclic_dim_closed_form(n: u64) -> Option<u64> {
    if n < 2 || is_prime_power(n) {
        return None;
    }
    let special = matches!(factorize(n).as_slice(), [(2, k), (_, 1)] if *k > 1);
    Some(n + if special { 2 } else { 1 } - phi(n) - tau(n))
}
