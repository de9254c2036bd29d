use std::collections::BTreeMap;

use serde::Serialize;

use super::Group;
use crate::error::{Error, Result};
use crate::formulas::prime_power_base;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicSubgroup {
    /// Smallest-index generator.
    pub generator: usize,
    /// Sorted member indices.
    pub members: Vec<usize>,
    pub order: usize,
}

impl CyclicSubgroup {
    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

impl Group {
    /// `<x>` as a sorted member list.
    pub fn generated_subgroup(&self, x: usize) -> CyclicSubgroup {
        let mut members: Vec<usize> = self.power_lists()[x].iter().map(|&m| m as usize).collect();
        members.sort_unstable();
        let order = members.len();
        let generator = members
            .iter()
            .copied()
            .find(|&m| self.element_order(m) as usize == order)
            .unwrap_or(x);
        CyclicSubgroup { generator, members, order }
    }

    /// Every distinct cyclic subgroup, sorted by `(order, members)`.
    pub fn cyclic_subgroups(&self) -> Vec<CyclicSubgroup> {
        let mut seen: BTreeMap<(usize, Vec<usize>), CyclicSubgroup> = BTreeMap::new();
        for x in 0..self.order() {
            let c = self.generated_subgroup(x);
            if c.generator == x {
                seen.insert((c.order, c.members.clone()), c);
            }
        }
        seen.into_values().collect()
    }

    /// Elements whose cyclic subgroup is not properly contained in another cyclic subgroup.
    fn maximal_flags(&self) -> Vec<bool> {
        let n = self.order();
        let mut maximal = vec![true; n];
        for y in 0..n {
            let oy = self.element_order(y);
            for &m in &self.power_lists()[y] {
                if self.element_order(m as usize) < oy {
                    maximal[m as usize] = false;
                }
            }
        }
        maximal
    }

    /// The maximal cyclic subgroups, each listed once, sorted by `(order, members)`.
    pub fn maximal_cyclic_subgroups(&self) -> &[CyclicSubgroup] {
        self.maximal.get_or_init(|| {
            let flags = self.maximal_flags();
            let mut by_members: BTreeMap<(usize, Vec<usize>), CyclicSubgroup> = BTreeMap::new();
            for x in (0..self.order()).filter(|&x| flags[x]) {
                let c = self.generated_subgroup(x);
                by_members.entry((c.order, c.members.clone())).or_insert(c);
            }
            by_members.into_values().collect()
        })
    }

    /// `M(G)`: generators of maximal cyclic subgroups, sorted.
    pub fn maximal_generators(&self) -> Vec<usize> {
        let flags = self.maximal_flags();
        (0..self.order()).filter(|&x| flags[x]).collect()
    }

    /// Number of cyclic subgroups of order `p^{u+1}` containing `c`, where `c`
    /// is a non-maximal cyclic subgroup of order `p^u` with `u > 1`.
    pub fn count_cyclic_extensions(&self, c: &CyclicSubgroup) -> Result<usize> {
        let p = prime_power_base(c.order as u64)
            .ok_or_else(|| Error::Precondition(format!("order {} is not a prime power", c.order)))?;
        if c.order as u64 <= p {
            return Err(Error::Precondition(format!(
                "cyclic subgroup of order {} has exponent u <= 1",
                c.order
            )));
        }
        if prime_power_base(self.order() as u64) != Some(p) || !self.is_abelian() {
            return Err(Error::Precondition(format!(
                "{} is not an abelian {p}-group",
                self.name()
            )));
        }
        if self
            .maximal_cyclic_subgroups()
            .iter()
            .any(|m| m.members == c.members)
        {
            return Err(Error::Precondition("cyclic subgroup is maximal".into()));
        }
        let target = c.order * p as usize;
        Ok(self
            .cyclic_subgroups()
            .iter()
            .filter(|d| d.order == target && c.members.iter().all(|&m| d.contains(m)))
            .count())
    }
}
