//! Property checks per group, family sweeps, CSV output and the result cache.

use std::collections::{BTreeMap, HashMap};
use std::fs::{self, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulas::{
    class_count_cyclic, cyclic_order, euler_phi, factorize, nbh_special_form, prime_power_base,
    vertex_count_nilpotent, Branch,
};
use crate::graph::{
    difference_graph, enhanced_power_graph, graphs_isomorphic, nilpotent_difference_adjacent,
    power_graph, strong_product, Graph, IsoOutcome,
};
use crate::group::{sylow_decomposition, Group, GroupSpec};
use crate::metric::{all_pairs_distances, constructed_resolving_set};
use crate::report::Analysis;
use crate::twins::{are_twins, involution_singleton_check, near_twin_pairs, predicted_twin_class};
use crate::TOOL_VERSION;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool, detail: impl Into<String>) -> Check {
        Check { name: name.to_string(), pass, detail: detail.into() }
    }
}

#[derive(Debug, Clone)]
pub struct CheckOptions {
    pub axioms_max: usize,
    pub adjacency_max: usize,
    pub strong_product_max: usize,
    pub counting_max: usize,
    /// Shift every closed-form dimension by one, to prove the harness can fail.
    pub inject_fault: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            axioms_max: 200,
            adjacency_max: 200,
            strong_product_max: 100,
            counting_max: 256,
            inject_fault: false,
        }
    }
}

/// Every applicable property check for one analysed group, in a fixed order.
pub fn run_checks(a: &Analysis, opts: &CheckOptions) -> Vec<Check> {
    let mut out = Vec::new();
    let g = &a.group;
    let n = g.order();
    if n <= opts.axioms_max {
        out.push(check_group_axioms(g));
    }
    out.push(check_order_sum(g));
    if let Some(c) = check_maximal_inventory(&a.spec, g) {
        out.push(c);
    }
    out.push(check_edge_containment(g, &a.difference));
    out.push(check_power_remark(g));
    out.push(check_twin_equivalence(a));
    out.push(check_twin_swaps(a));
    if let Some(w) = &a.witness {
        out.push(Check::new(
            "twin_lower_bound",
            w.size >= a.partition.forced_count(),
            format!("dim {} vs forced {}", w.size, a.partition.forced_count()),
        ));
    }
    if a.sylow.is_some() {
        out.extend(nilpotent_checks(a, opts));
    }
    if let Some(m) = cyclic_order(&a.spec) {
        if prime_power_base(m).is_none() {
            let expected = class_count_cyclic(m).expect("non-prime-power");
            let got = a.partition.classes.len() as u64;
            out.push(Check::new(
                "class_count",
                got == expected,
                format!("classes {got}, tau(n)-2 = {expected}"),
            ));
        }
    }
    if let Some(m) = surrogate_order(&a.spec) {
        out.push(check_surrogate(&a.difference, m));
    }
    if let (Some(f), Some(dim)) = (a.formula, a.dim()) {
        if let Some(value) = f.value {
            let value = value + u64::from(opts.inject_fault);
            out.push(Check::new(
                "dim_formula",
                dim as u64 == value,
                format!("exact {dim}, formula {value} ({})", f.branch.as_str()),
            ));
        }
    }
    if n <= opts.counting_max {
        out.extend(counting_checks(&a.spec, g));
    }
    out
}

fn check_group_axioms(g: &Group) -> Check {
    let n = g.order();
    let table: Vec<usize> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| g.mul(a, b)).collect();
    let op = |a: usize, b: usize| table[a * n + b];
    let identity = (0..n).all(|a| op(a, 0) == a && op(0, a) == a);
    let inverses = (0..n).all(|a| (0..n).any(|b| op(a, b) == 0));
    let closure = table.iter().all(|&c| c < n);
    let associative = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| op(op(a, b), c) == op(a, op(b, c)))));
    let divides = (0..n).all(|a| n as u32 % g.element_order(a) == 0) && g.element_order(0) == 1;
    Check::new(
        "group_axioms",
        identity && inverses && closure && associative && divides,
        format!("identity {identity}, inverses {inverses}, closure {closure}, associative {associative}, orders divide {divides}"),
    )
}

fn check_order_sum(g: &Group) -> Check {
    let n = g.order() as u64;
    let total: usize = (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| g.count_elements_of_order(d as u32))
        .sum();
    Check::new("order_sum", total as u64 == n, format!("sum {total}, |G| {n}"))
}

fn check_maximal_inventory(spec: &GroupSpec, g: &Group) -> Option<Check> {
    let inv = g.maximal_cyclic_subgroups();
    let count = |order: usize, rotations: Option<usize>| {
        inv.iter()
            .filter(|c| c.order == order)
            .filter(|c| match rotations {
                Some(r) => c.members.iter().all(|&m| m < r),
                None => true,
            })
            .count()
    };
    let (ok, detail) = match *spec {
        GroupSpec::Cyclic(n) => {
            let gens = g.maximal_generators().len() as u64;
            (inv.len() == 1 && gens == euler_phi(n), format!("{} maximal, |M| = {gens}", inv.len()))
        }
        GroupSpec::Dihedral(o) => {
            let n = o as usize / 2;
            let rot = count(n, Some(n));
            let refl = inv.iter().filter(|c| c.order == 2 && c.members.iter().any(|&m| m >= n)).count();
            (rot == 1 && refl == n && inv.len() == n + 1, format!("rotation {rot}, order-2 {refl}"))
        }
        GroupSpec::Quaternion(o) => {
            let n = o as usize / 4;
            let rot = count(2 * n, Some(2 * n));
            let fours = inv.iter().filter(|c| c.order == 4 && c.members.iter().any(|&m| m >= 2 * n)).count();
            (rot == 1 && fours == n && inv.len() == n + 1, format!("rotation {rot}, order-4 {fours}"))
        }
        GroupSpec::SemiDihedral(o) => {
            let n = o as usize / 8;
            let rot = count(4 * n, Some(4 * n));
            let twos = inv.iter().filter(|c| c.order == 2).count();
            let fours = inv.iter().filter(|c| c.order == 4 && c.members.iter().any(|&m| m >= 4 * n)).count();
            (
                rot == 1 && twos == 2 * n && fours == n && inv.len() == 3 * n + 1,
                format!("rotation {rot}, order-2 {twos}, order-4 {fours}"),
            )
        }
        _ => return None,
    };
    Some(Check::new("maximal_inventory", ok, detail))
}

fn check_edge_containment(g: &Group, d: &Graph) -> Check {
    let p = power_graph(g);
    let e = enhanced_power_graph(g);
    let contained = p.edges().iter().all(|&(u, v)| e.adjacent(u, v));
    let mut exact = d.is_simple() && (0..d.n()).all(|v| d.degree(v) > 0);
    for u in 0..g.order() {
        let du = d.vertex_of(u);
        exact &= du.is_none() || d.removed_vertices().iter().all(|r| r.element != u);
        for v in u + 1..g.order() {
            let expected = e.adjacent(u, v) && !p.adjacent(u, v);
            let actual = match (du, d.vertex_of(v)) {
                (Some(a), Some(b)) => d.adjacent(a, b),
                _ => false,
            };
            exact &= expected == actual;
        }
    }
    exact &= d.n() + d.removed_vertices().len() == g.order();
    Check::new(
        "edge_containment",
        contained && exact,
        format!("power within enhanced {contained}, difference exact {exact}"),
    )
}

fn check_power_remark(g: &Group) -> Check {
    let p = power_graph(g);
    let o = g.element_orders();
    let comparable = |u: usize, v: usize| o[u] % o[v] == 0 || o[v] % o[u] == 0;
    let forward = (0..g.order()).all(|u| (0..g.order()).all(|v| comparable(u, v) || !p.adjacent(u, v)));
    let converse = g.maximal_cyclic_subgroups().iter().all(|c| {
        c.members.iter().all(|&u| {
            c.members
                .iter()
                .all(|&v| u == v || p.adjacent(u, v) || !comparable(u, v))
        })
    });
    Check::new(
        "power_order_remark",
        forward && converse,
        format!("incomparable implies non-adjacent {forward}, converse in cyclic {converse}"),
    )
}

fn check_twin_equivalence(a: &Analysis) -> Check {
    let d = &a.difference;
    let p = &a.partition;
    let covers = p.class_of.len() == d.n()
        && p.classes.iter().map(Vec::len).sum::<usize>() == d.n();
    let mut consistent = true;
    for u in 0..d.n() {
        for v in u + 1..d.n() {
            consistent &= are_twins(d, u, v) == (p.class_of[u] == p.class_of[v]);
        }
    }
    Check::new(
        "twin_equivalence",
        covers && consistent,
        format!("partition covers {covers}, relation matches partition {consistent}"),
    )
}

fn check_twin_swaps(a: &Analysis) -> Check {
    let d = &a.difference;
    let mut checked = 0;
    let mut ok = true;
    for class in a.partition.classes.iter().filter(|c| c.len() > 1) {
        let mut perm: Vec<usize> = (0..d.n()).collect();
        perm.swap(class[0], class[1]);
        ok &= d.is_isomorphism(d, &perm);
        checked += 1;
    }
    Check::new("twin_swap_automorphism", ok, format!("{checked} transpositions"))
}

fn nilpotent_checks(a: &Analysis, opts: &CheckOptions) -> Vec<Check> {
    let sylow = a.sylow.as_ref().expect("nilpotent");
    let g = &a.group;
    let d = &a.difference;
    let k = sylow.factors.len();
    let mut out = Vec::new();

    // vertex count, both from the intrinsic Sylow subgroups and from the spec
    let intrinsic = (k >= 2).then(|| {
        let product: usize = sylow.factors.iter().map(|f| f.group.maximal_generators().len()).product();
        g.order() - (product + 1)
    });
    let from_spec = vertex_count_nilpotent(&a.spec).ok().flatten();
    let ok = match intrinsic {
        Some(v) => v == d.n() && from_spec.is_none_or(|s| s as usize == v),
        None => d.is_empty(),
    };
    out.push(Check::new(
        "vertex_count",
        ok,
        format!("graph {}, formula {intrinsic:?}, spec formula {from_spec:?}", d.n()),
    ));

    if let Ok(parts) = sylow_decomposition(&a.spec) {
        let factors: Vec<GroupSpec> = parts.iter().map(|(_, f)| f.clone()).collect();
        let ok = Group::build(&GroupSpec::Product(factors)).is_ok_and(|rebuilt| {
            let mut x = g.element_orders().to_vec();
            let mut y = rebuilt.element_orders().to_vec();
            x.sort_unstable();
            y.sort_unstable();
            x == y
        });
        out.push(Check::new("sylow_order_multiset", ok, format!("{} factors", parts.len())));
    }

    if g.order() <= opts.adjacency_max {
        let groups = sylow.groups();
        let mut mismatches = 0;
        for u in 0..g.order() {
            for v in u + 1..g.order() {
                let predicted = nilpotent_difference_adjacent(&groups, sylow.coords(u), sylow.coords(v))
                    .expect("arity matches");
                let actual = match (d.vertex_of(u), d.vertex_of(v)) {
                    (Some(x), Some(y)) => d.adjacent(x, y),
                    _ => false,
                };
                mismatches += usize::from(predicted != actual);
            }
        }
        out.push(Check::new(
            "adjacency_characterization",
            mismatches == 0,
            format!("{mismatches} mismatched pairs"),
        ));
    }

    if g.order() <= opts.strong_product_max {
        out.push(check_strong_product(a));
    }

    if k >= 2 {
        let mut checked = 0;
        let mut bad = 0;
        for (f, sf) in sylow.factors.iter().enumerate() {
            for x in 1..sf.group.order() {
                let mut coords = vec![0; k];
                coords[f] = x;
                let Some(v) = d.vertex_of(sylow.element(&coords)) else { continue };
                let predicted = predicted_twin_class(sylow, d, f, x).expect("preconditions hold");
                checked += 1;
                bad += usize::from(predicted.as_slice() != a.partition.class_of_vertex(v));
            }
        }
        out.push(Check::new(
            "predicted_twin_class",
            bad == 0,
            format!("{bad} of {checked} single-factor classes differ"),
        ));
    }

    let near = near_twin_pairs(d);
    let involutions = g.count_elements_of_order(2);
    let o = |v: usize| d.vertices()[v].order;
    let bad = near
        .iter()
        .filter(|t| !(o(t.z) == 2 && involutions == 1 && o(t.y) == 2 * o(t.x)))
        .count();
    out.push(Check::new(
        "near_twin_orders",
        bad == 0,
        format!("{bad} of {} near-twin triples violate o(z)=2, unique involution, o(y)=2o(x)", near.len()),
    ));

    let special = nbh_special_form(sylow);
    out.push(Check::new(
        "nbh_condition",
        special == !near.is_empty(),
        format!("special form {special}, near-twin pairs {}", near.len()),
    ));

    let inv = involution_singleton_check(g, d, &a.partition);
    out.push(Check::new(
        "involution_singleton",
        inv.holds,
        if inv.vacuous { "vacuous: no involution vertex".to_string() } else { format!("{involutions} involutions") },
    ));

    if !d.is_empty() {
        if let (Some(dim), Some(alpha)) = (a.dim(), a.alpha) {
            let dim = dim as u64;
            out.push(Check::new(
                "alpha_dichotomy",
                dim == alpha || dim + 1 == alpha,
                format!("dim {dim}, alpha {alpha}"),
            ));
            out.push(Check::new(
                "branch_consistency",
                (dim == alpha) == !near.is_empty(),
                format!("dim {dim}, alpha {alpha}, near-twin pairs {}", near.len()),
            ));
        }
        match constructed_resolving_set(g, d, &a.partition) {
            Ok(set) => {
                let ok = all_pairs_distances(d).resolves(&set);
                out.push(Check::new("constructed_resolving_set", ok, format!("size {}", set.len())));
            }
            Err(e) => out.push(Check::new("constructed_resolving_set", false, e.to_string())),
        }
    }
    out
}

fn check_strong_product(a: &Analysis) -> Check {
    let sylow = a.sylow.as_ref().expect("nilpotent");
    let pe = enhanced_power_graph(&a.group);
    let internal = sylow
        .factors
        .iter()
        .map(|f| enhanced_power_graph(&f.group))
        .reduce(|acc, h| strong_product(&acc, &h))
        .expect("at least one factor");
    let map: Vec<usize> = (0..a.group.order()).map(|x| sylow.packed(x)).collect();
    let natural = pe.is_isomorphism(&internal, &map);

    let searched = match sylow_decomposition(&a.spec) {
        Ok(parts) => {
            let built: Result<Vec<Graph>> = parts
                .iter()
                .map(|(_, f)| Group::build(f).map(|g| enhanced_power_graph(&g)))
                .collect();
            match built {
                Ok(graphs) => {
                    let product = graphs.into_iter().reduce(|acc, h| strong_product(&acc, &h)).unwrap();
                    Some(graphs_isomorphic(&pe, &product))
                }
                Err(_) => None,
            }
        }
        Err(_) => None,
    };
    let ok = natural && searched.as_ref().is_none_or(|s| s.mapping().is_some());
    let searched = match searched {
        Some(IsoOutcome::Isomorphic(_)) => "found",
        Some(IsoOutcome::NotIsomorphic) => "none",
        Some(IsoOutcome::Inconclusive { .. }) => "inconclusive",
        None => "skipped",
    };
    Check::new("strong_product", ok, format!("natural bijection {natural}, search {searched}"))
}

/// Order `m` of the cyclic group whose difference graph matches this family's.
fn surrogate_order(spec: &GroupSpec) -> Option<u64> {
    match spec {
        GroupSpec::Dihedral(o) => Some(o / 2),
        GroupSpec::Quaternion(o) => Some(o / 2),
        GroupSpec::SemiDihedral(o) => Some(o / 2),
        _ => None,
    }
}

fn check_surrogate(d: &Graph, m: u64) -> Check {
    let cyclic = Group::build(&GroupSpec::Cyclic(m)).expect("valid cyclic order");
    let target = difference_graph(&cyclic);
    let outcome = graphs_isomorphic(d, &target);
    let verified = outcome.mapping().is_some_and(|map| d.is_isomorphism(&target, map));
    let detail = match &outcome {
        IsoOutcome::Isomorphic(_) if d.is_empty() => format!("both empty (Z{m})"),
        IsoOutcome::Isomorphic(_) => format!("bijection onto D(Z{m}) found"),
        IsoOutcome::NotIsomorphic => format!("not isomorphic to D(Z{m})"),
        IsoOutcome::Inconclusive { nodes } => format!("inconclusive after {nodes} nodes"),
    };
    Check::new("surrogate_isomorphism", verified, detail)
}

/// Counting checks for abelian p-groups `Z_{p^r1} x ... x Z_{p^rk}`.
fn counting_checks(spec: &GroupSpec, g: &Group) -> Vec<Check> {
    let atoms = spec.atoms();
    let Some(p) = prime_power_base(g.order() as u64) else { return Vec::new() };
    if !atoms.iter().all(|a| matches!(a, GroupSpec::Cyclic(_))) {
        return Vec::new();
    }
    let k = atoms.len() as u32;
    let expected = (p.pow(k) - 1) / (p - 1);
    let got = g.count_elements_of_order(p as u32) as u64;
    let subgroups = g.cyclic_subgroups().iter().filter(|c| c.order as u64 == p).count() as u64;
    let mut out = vec![
        Check::new(
            "counting_order_p",
            got == expected,
            format!("{got} elements of order {p}, expected {expected}"),
        ),
        // the same count read as subgroups, which holds for every p
        Check::new(
            "counting_subgroups_order_p",
            subgroups == expected,
            format!("{subgroups} subgroups of order {p}, expected {expected}"),
        ),
    ];
    let maximal: Vec<&[usize]> = g.maximal_cyclic_subgroups().iter().map(|c| c.members.as_slice()).collect();
    let mut checked = 0;
    let mut bad = 0;
    for c in g.cyclic_subgroups() {
        if c.order as u64 <= p || maximal.contains(&c.members.as_slice()) {
            continue;
        }
        checked += 1;
        match g.count_cyclic_extensions(&c) {
            Ok(count) => bad += usize::from(count as u64 != p.pow(k - 1)),
            Err(_) => bad += 1,
        }
    }
    out.push(Check::new(
        "counting_extensions",
        bad == 0,
        format!("{bad} of {checked} subgroups differ from p^(k-1) = {}", p.pow(k - 1)),
    ));
    out
}

// ---------------------------------------------------------------------------
// Families and spec generation

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Cyclic,
    Dihedral,
    Quaternion,
    Semidihedral,
    /// Non-cyclic abelian groups in elementary-divisor form.
    Abelian,
    /// `Q_{2^k} x A` with `A` abelian of odd order.
    QuaternionProducts,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Cyclic,
        Family::Dihedral,
        Family::Quaternion,
        Family::Semidihedral,
        Family::Abelian,
        Family::QuaternionProducts,
    ];

    pub const NILPOTENT: [Family; 3] = [Family::Cyclic, Family::Abelian, Family::QuaternionProducts];

    pub fn name(self) -> &'static str {
        match self {
            Family::Cyclic => "cyclic",
            Family::Dihedral => "dihedral",
            Family::Quaternion => "quaternion",
            Family::Semidihedral => "semidihedral",
            Family::Abelian => "abelian",
            Family::QuaternionProducts => "quaternion-products",
        }
    }

    /// Comma-separated family names; `nilpotent` and `all` expand to groups of families.
    pub fn parse_list(text: &str) -> Result<Vec<Family>> {
        let mut out = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item {
                "all" => out.extend(Family::ALL),
                "nilpotent" => out.extend(Family::NILPOTENT),
                other => out.push(other.parse()?),
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown family `{s}`")))
    }
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All abelian groups of order `m`, as elementary-divisor atom lists.
fn abelian_of_order(m: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for (p, e) in factorize(m) {
        let mut next = Vec::new();
        for prefix in &out {
            for part in partitions(e, e) {
                let mut atoms = prefix.clone();
                atoms.extend(part.iter().map(|&r| p.pow(r)));
                next.push(atoms);
            }
        }
        out = next;
    }
    out
}

fn product_of(atoms: Vec<GroupSpec>) -> GroupSpec {
    if atoms.len() == 1 {
        atoms.into_iter().next().unwrap()
    } else {
        GroupSpec::Product(atoms)
    }
}

/// Specs of the requested families with order at most `max_order`, sorted
/// by order, then canonical name.
pub fn generate_specs(families: &[Family], max_order: u64) -> Vec<GroupSpec> {
    let mut specs: BTreeMap<(u64, String), GroupSpec> = BTreeMap::new();
    let mut add = |spec: GroupSpec| {
        specs.insert((spec.order(), spec.canonical_name()), spec);
    };
    for family in families {
        match family {
            Family::Cyclic => (2..=max_order).for_each(|n| add(GroupSpec::Cyclic(n))),
            Family::Dihedral => (3..=max_order / 2).for_each(|n| add(GroupSpec::Dihedral(2 * n))),
            Family::Quaternion => (2..=max_order / 4).for_each(|n| add(GroupSpec::Quaternion(4 * n))),
            Family::Semidihedral => (2..=max_order / 8).for_each(|n| add(GroupSpec::SemiDihedral(8 * n))),
            Family::Abelian => {
                for m in 2..=max_order {
                    for atoms in abelian_of_order(m) {
                        if atoms.len() > factorize(m).len() {
                            add(product_of(atoms.into_iter().map(GroupSpec::Cyclic).collect()));
                        }
                    }
                }
            }
            Family::QuaternionProducts => {
                let mut q = 8;
                while q * 3 <= max_order {
                    for m in (3..=max_order / q).step_by(2) {
                        for atoms in abelian_of_order(m) {
                            let mut all = vec![GroupSpec::Quaternion(q)];
                            all.extend(atoms.into_iter().map(GroupSpec::Cyclic));
                            add(GroupSpec::Product(all));
                        }
                    }
                    q *= 2;
                }
            }
        }
    }
    specs.into_values().collect()
}

// ---------------------------------------------------------------------------
// Sweep

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecResult {
    pub spec: String,
    pub order: usize,
    pub vcount: usize,
    pub classes: usize,
    pub dim_exact: Option<usize>,
    pub dim_formula: Option<u64>,
    pub branch: Option<Branch>,
    pub alpha: Option<u64>,
    pub checks: Vec<Check>,
    pub ms: u64,
}

impl SpecResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn evaluate_spec(spec: &GroupSpec, max_order: u64, opts: &CheckOptions) -> Result<SpecResult> {
    let start = Instant::now();
    let analysis = Analysis::new(spec, max_order, true)?;
    let checks = run_checks(&analysis, opts);
    Ok(SpecResult {
        spec: spec.canonical_name(),
        order: analysis.group.order(),
        vcount: analysis.difference.n(),
        classes: analysis.partition.classes.len(),
        dim_exact: analysis.dim(),
        dim_formula: analysis.formula.and_then(|f| f.value).map(|v| v + u64::from(opts.inject_fault)),
        branch: analysis.formula.map(|f| f.branch),
        alpha: analysis.alpha,
        checks,
        ms: start.elapsed().as_millis() as u64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheMode {
    /// Reuse cached rows and append new ones.
    Use,
    /// Recompute everything and compare against cached rows without writing.
    Audit,
}

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub max_order: u64,
    pub families: Vec<Family>,
    pub cache: Option<PathBuf>,
    pub cache_mode: CacheMode,
    pub checks: CheckOptions,
    /// Group-order cap passed to construction.
    pub group_cap: u64,
}

#[derive(Debug, Default)]
pub struct SweepOutcome {
    pub results: Vec<SpecResult>,
    pub warnings: Vec<String>,
    pub cache_hits: usize,
    pub audit_mismatches: usize,
}

impl SweepOutcome {
    pub fn passed(&self) -> bool {
        self.audit_mismatches == 0 && self.results.iter().all(SpecResult::passed)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheLine {
    spec: String,
    version: String,
    result: SpecResult,
}

fn load_cache(path: &PathBuf, warnings: &mut Vec<String>) -> Result<HashMap<String, SpecResult>> {
    let file = match fs::File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(HashMap::new()),
        Err(e) => return Err(e.into()),
    };
    let mut out = HashMap::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<CacheLine>(&line) {
            Ok(entry) if entry.version == TOOL_VERSION => {
                out.insert(entry.spec, entry.result);
            }
            Ok(_) => {}
            Err(e) => {
                warnings.push(format!(
                    "cache {} corrupted at line {}: {e}; rebuilding",
                    path.display(),
                    i + 1
                ));
                fs::write(path, "")?;
                return Ok(HashMap::new());
            }
        }
    }
    Ok(out)
}

pub fn run_sweep(opts: &SweepOptions) -> Result<SweepOutcome> {
    let mut outcome = SweepOutcome::default();
    let specs = generate_specs(&opts.families, opts.max_order);
    let cacheable = !opts.checks.inject_fault;
    let cached = match (&opts.cache, cacheable) {
        (Some(path), true) => load_cache(path, &mut outcome.warnings)?,
        _ => HashMap::new(),
    };
    let reuse = opts.cache_mode == CacheMode::Use;

    let computed: Vec<(Result<SpecResult>, bool)> = specs
        .par_iter()
        .map(|spec| {
            let key = spec.canonical_name();
            match cached.get(&key) {
                Some(hit) if reuse => (Ok(hit.clone()), true),
                _ => (evaluate_spec(spec, opts.group_cap, &opts.checks), false),
            }
        })
        .collect();

    let mut fresh = Vec::new();
    for (result, hit) in computed {
        let result = result?;
        if hit {
            outcome.cache_hits += 1;
        } else {
            if opts.cache_mode == CacheMode::Audit {
                if let Some(old) = cached.get(&result.spec) {
                    if old.checks != result.checks || old.dim_exact != result.dim_exact {
                        outcome.audit_mismatches += 1;
                        outcome.warnings.push(format!("cache audit mismatch for {}", result.spec));
                    }
                }
            }
            fresh.push(result.clone());
        }
        outcome.results.push(result);
    }

    if let (Some(path), true, true) = (&opts.cache, cacheable, reuse) {
        let mut file = OpenOptions::new().create(true).append(true).open(path)?;
        for result in fresh {
            let line = CacheLine { spec: result.spec.clone(), version: TOOL_VERSION.to_string(), result };
            writeln!(file, "{}", serde_json::to_string(&line)?)?;
        }
    }
    Ok(outcome)
}

pub const CSV_HEADER: &str = "spec,order,vcount,classes,dim_exact,dim_formula,branch,alpha,check,verdict,ms";

/// One row per (spec, check). The `ms` column is left empty unless `timings`
/// is set, so that reruns are byte-identical.
pub fn write_csv(results: &[SpecResult], timings: bool, mut out: impl Write) -> io::Result<()> {
    fn opt<T: ToString>(v: Option<T>) -> String {
        v.map(|x| x.to_string()).unwrap_or_default()
    }
    writeln!(out, "{CSV_HEADER}")?;
    for r in results {
        for c in &r.checks {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                r.spec,
                r.order,
                r.vcount,
                r.classes,
                opt(r.dim_exact),
                opt(r.dim_formula),
                r.branch.map(|b| b.as_str()).unwrap_or_default(),
                opt(r.alpha),
                c.name,
                if c.pass { "pass" } else { "fail" },
                if timings { r.ms.to_string() } else { String::new() },
            )?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_four() {
        assert_eq!(partitions(4, 4).len(), 5);
    }

    #[test]
    fn abelian_counts() {
        assert_eq!(abelian_of_order(16).len(), 5);
        assert_eq!(abelian_of_order(72).len(), 6);
        assert_eq!(abelian_of_order(7).len(), 1);
    }

    #[test]
    fn generation_is_sorted_and_unique() {
        let specs = generate_specs(&Family::ALL, 24);
        let keys: Vec<(u64, String)> = specs.iter().map(|s| (s.order(), s.canonical_name())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(keys, sorted);
        let names: Vec<String> = specs.iter().map(GroupSpec::canonical_name).collect();
        for expected in ["Z12", "D12", "Q8", "SD16", "Z2xZ2xZ3", "Z3xQ8", "Z2xZ2xZ2"] {
            assert!(names.iter().any(|n| n == expected), "{expected} missing");
        }
        assert!(!names.iter().any(|n| n == "Z2xZ3"), "cyclic groups are not repeated as abelian");
    }

    #[test]
    fn family_lists() {
        assert_eq!(
            Family::parse_list("dihedral, quaternion").unwrap(),
            vec![Family::Dihedral, Family::Quaternion]
        );
        assert_eq!(Family::parse_list("nilpotent").unwrap().len(), 3);
        assert!(Family::parse_list("bogus").is_err());
    }

    #[test]
    fn z12_checks_pass() {
        let r = evaluate_spec(&"Z12".parse().unwrap(), 10_000, &CheckOptions::default()).unwrap();
        assert!(r.passed(), "{:#?}", r.checks);
        for name in ["dim_formula", "class_count", "alpha_dichotomy", "nbh_condition", "strong_product"] {
            assert!(r.check(name).is_some(), "{name}");
        }
    }

    #[test]
    fn injected_fault_fails() {
        let opts = CheckOptions { inject_fault: true, ..CheckOptions::default() };
        let r = evaluate_spec(&"Z12".parse().unwrap(), 10_000, &opts).unwrap();
        assert!(!r.check("dim_formula").unwrap().pass);
    }

    #[test]
    fn counting_rows_for_p_groups() {
        let r = evaluate_spec(&"Z8xZ4xZ2".parse().unwrap(), 10_000, &CheckOptions::default()).unwrap();
        assert!(r.check("counting_order_p").unwrap().pass);
        assert!(r.check("counting_extensions").unwrap().pass);
    }

    #[test]
    fn csv_layout() {
        let r = evaluate_spec(&"Z6".parse().unwrap(), 10_000, &CheckOptions::default()).unwrap();
        let mut buf = Vec::new();
        write_csv(&[r], false, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let row = lines.find(|l| l.contains(",dim_formula,")).unwrap();
        assert_eq!(row, "Z6,6,3,2,1,1,general,2,dim_formula,pass,");
    }
}
