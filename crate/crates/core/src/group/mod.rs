//! Finite groups realized as explicit element sets with normal-form multiplication.
//!
//! Every element is a tuple of per-factor local indices, packed into a single
//! global index in mixed radix with the first factor most significant. The
//! identity is always index 0.

mod spec;
mod subgroups;
mod sylow;

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formulas::gcd;

pub use spec::{parse_spec, GroupSpec};
pub use subgroups::CyclicSubgroup;
pub use sylow::{sylow_decomposition, SylowFactor, SylowFactors};

pub const DEFAULT_MAX_ORDER: u64 = 10_000;

/// One direct factor, with its own local multiplication rule.
#[derive(Debug, Clone)]
enum Factor {
    /// `Z_n`, local index `i`.
    Cyclic { n: usize },
    /// `<x, y | x^n = y^2 = e, xy = yx^-1>`, local index `i + n*j` for `x^i y^j`.
    Dihedral { n: usize },
    /// `<a, b | a^{2n} = e, a^n = b^2, ab = ba^-1>`, local index `i + 2n*j` for `a^i b^j`.
    Quaternion { n: usize },
    /// `<a, b | a^{4n} = b^2 = e, ba = a^{2n-1}b>`, local index `i + 4n*j` for `a^i b^j`.
    SemiDihedral { n: usize },
    /// Explicit Cayley table; local index 0 is the identity.
    Table {
        size: usize,
        table: Vec<u32>,
        orders: Vec<u32>,
        labels: Vec<String>,
    },
}

impl Factor {
    fn size(&self) -> usize {
        match self {
            Factor::Cyclic { n } => *n,
            Factor::Dihedral { n } => 2 * n,
            Factor::Quaternion { n } => 4 * n,
            Factor::SemiDihedral { n } => 8 * n,
            Factor::Table { size, .. } => *size,
        }
    }

    /// Split a two-generator local index into `(rotation exponent, j)`.
    fn split(&self, a: usize) -> (usize, usize, usize) {
        let m = self.size() / 2;
        (a % m, a / m, m)
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        match self {
            Factor::Cyclic { n } => (a + b) % n,
            Factor::Dihedral { .. } => {
                let (i, s, n) = self.split(a);
                let (j, t, _) = self.split(b);
                let j = if s == 1 { (n - j) % n } else { j };
                (i + j) % n + n * ((s + t) % 2)
            }
            Factor::Quaternion { n } => {
                let (i, s, m) = self.split(a);
                let (j, t, _) = self.split(b);
                let j = if s == 1 { (m - j) % m } else { j };
                let mut r = i + j;
                if s + t == 2 {
                    r += n;
                }
                r % m + m * ((s + t) % 2)
            }
            Factor::SemiDihedral { n } => {
                let (i, s, m) = self.split(a);
                let (j, t, _) = self.split(b);
                let j = if s == 1 { j * (2 * n - 1) % m } else { j };
                (i + j) % m + m * ((s + t) % 2)
            }
            Factor::Table { size, table, .. } => table[a * size + b] as usize,
        }
    }

    fn order_of(&self, a: usize) -> u32 {
        let rotation_order = |i: usize, m: usize| (m / gcd(i as u64, m as u64) as usize) as u32;
        match self {
            Factor::Cyclic { n } => rotation_order(a, *n),
            Factor::Dihedral { .. } => match self.split(a) {
                (i, 0, m) => rotation_order(i, m),
                _ => 2,
            },
            Factor::Quaternion { .. } => match self.split(a) {
                (i, 0, m) => rotation_order(i, m),
                _ => 4,
            },
            Factor::SemiDihedral { .. } => match self.split(a) {
                (i, 0, m) => rotation_order(i, m),
                (i, _, _) if i % 2 == 0 => 2,
                _ => 4,
            },
            Factor::Table { orders, .. } => orders[a],
        }
    }

    fn label(&self, a: usize) -> String {
        let word = |gen_a: &str, gen_b: &str, a: usize| {
            let (i, j, _) = self.split(a);
            let mut s = match i {
                0 => String::new(),
                1 => gen_a.to_string(),
                _ => format!("{gen_a}^{i}"),
            };
            if j == 1 {
                s.push_str(gen_b);
            }
            if s.is_empty() {
                s.push('e');
            }
            s
        };
        match self {
            Factor::Cyclic { .. } => a.to_string(),
            Factor::Dihedral { .. } => word("x", "y", a),
            Factor::Quaternion { .. } | Factor::SemiDihedral { .. } => word("a", "b", a),
            Factor::Table { labels, .. } => labels[a].clone(),
        }
    }
}

/// A finite group with elements indexed `0..order`, identity at 0.
#[derive(Debug)]
pub struct Group {
    name: String,
    factors: Vec<Factor>,
    orders: Vec<u32>,
    cyclic: OnceLock<Vec<Vec<u32>>>,
    maximal: OnceLock<Vec<CyclicSubgroup>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupExport {
    pub name: String,
    pub order: usize,
    pub element_labels: Vec<String>,
    pub order_of_each_element: Vec<u32>,
}

impl Group {
    pub fn build(spec: &GroupSpec) -> Result<Group> {
        Group::build_with_limit(spec, DEFAULT_MAX_ORDER)
    }

    pub fn build_with_limit(spec: &GroupSpec, max_order: u64) -> Result<Group> {
        spec.validate()?;
        let order = spec.order();
        if order > max_order {
            return Err(Error::OrderTooLarge { order, max: max_order });
        }
        let factors = spec
            .atoms()
            .into_iter()
            .map(|atom| match atom {
                GroupSpec::Cyclic(n) => Factor::Cyclic { n: n as usize },
                GroupSpec::Dihedral(o) => Factor::Dihedral { n: o as usize / 2 },
                GroupSpec::Quaternion(o) => Factor::Quaternion { n: o as usize / 4 },
                GroupSpec::SemiDihedral(o) => Factor::SemiDihedral { n: o as usize / 8 },
                _ => unreachable!("atoms are families"),
            })
            .collect();
        Ok(Group::from_factors(spec.canonical_name(), factors))
    }

    fn from_factors(name: String, factors: Vec<Factor>) -> Group {
        let mut group = Group {
            name,
            factors,
            orders: Vec::new(),
            cyclic: OnceLock::new(),
            maximal: OnceLock::new(),
        };
        group.orders = (0..group.order())
            .map(|x| {
                group
                    .locals(x)
                    .iter()
                    .zip(&group.factors)
                    .fold(1u64, |acc, (&a, f)| {
                        let o = u64::from(f.order_of(a));
                        acc / gcd(acc, o) * o
                    }) as u32
            })
            .collect();
        group
    }

    /// The subgroup on `members` (which must contain the identity and be
    /// closed) as a standalone group with an explicit table. Local index `k`
    /// corresponds to `members[k]` after sorting.
    pub fn subgroup(&self, name: impl Into<String>, members: &[usize]) -> Result<(Group, Vec<usize>)> {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        if members.first() != Some(&0) {
            return Err(Error::Precondition("subgroup must contain the identity".into()));
        }
        let size = members.len();
        let mut position = vec![u32::MAX; self.order()];
        for (k, &m) in members.iter().enumerate() {
            position[m] = k as u32;
        }
        let mut table = Vec::with_capacity(size * size);
        for &a in &members {
            for &b in &members {
                let p = position[self.mul(a, b)];
                if p == u32::MAX {
                    return Err(Error::Precondition("member set is not closed".into()));
                }
                table.push(p);
            }
        }
        let factor = Factor::Table {
            size,
            table,
            orders: members.iter().map(|&m| self.orders[m]).collect(),
            labels: members.iter().map(|&m| self.label(m)).collect(),
        };
        Ok((Group::from_factors(name.into(), vec![factor]), members))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(Factor::size).product()
    }

    pub fn identity(&self) -> usize {
        0
    }

    fn locals(&self, mut x: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (slot, f) in out.iter_mut().zip(&self.factors).rev() {
            *slot = x % f.size();
            x /= f.size();
        }
        out
    }

    fn pack(&self, locals: impl IntoIterator<Item = usize>) -> usize {
        locals
            .into_iter()
            .zip(&self.factors)
            .fold(0, |acc, (a, f)| acc * f.size() + a)
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.locals(x), self.locals(y));
        self.pack(self.factors.iter().enumerate().map(|(k, f)| f.mul(a[k], b[k])))
    }

    pub fn pow(&self, x: usize, mut k: u64) -> usize {
        let mut base = x;
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.pow(x, u64::from(self.element_order(x)) - 1)
    }

    /// Smallest `k >= 1` with `x^k = e`.
    pub fn element_order(&self, x: usize) -> u32 {
        self.orders[x]
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn label(&self, x: usize) -> String {
        let locals = self.locals(x);
        if self.factors.len() == 1 {
            return self.factors[0].label(locals[0]);
        }
        let parts: Vec<String> = locals
            .iter()
            .zip(&self.factors)
            .map(|(&a, f)| f.label(a))
            .collect();
        format!("({})", parts.join(","))
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.order()).map(|x| self.label(x)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn count_elements_of_order(&self, m: u32) -> usize {
        self.orders.iter().filter(|&&o| o == m).count()
    }

    /// `x^0, x^1, ..., x^{o(x)-1}` for every element, computed once.
    pub(crate) fn power_lists(&self) -> &[Vec<u32>] {
        self.cyclic.get_or_init(|| {
            (0..self.order())
                .map(|x| {
                    let mut powers = Vec::with_capacity(self.orders[x] as usize);
                    let mut cur = self.identity();
                    loop {
                        powers.push(cur as u32);
                        cur = self.mul(cur, x);
                        if cur == self.identity() {
                            break;
                        }
                    }
                    powers
                })
                .collect()
        })
    }

    /// Whether `y` is a power of `x`.
    pub fn contains_power(&self, x: usize, y: usize) -> bool {
        self.power_lists()[x].contains(&(y as u32))
    }

    pub fn export(&self) -> GroupExport {
        GroupExport {
            name: self.name.clone(),
            order: self.order(),
            element_labels: self.labels(),
            order_of_each_element: self.orders.clone(),
        }
    }
}
