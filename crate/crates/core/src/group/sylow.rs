use std::collections::BTreeMap;

use super::{Group, GroupSpec};
use crate::error::{Error, Result};
use crate::formulas::{factorize, prime_power_base};

/// Splits a nilpotent spec into one spec per prime, ordered by prime.
///
/// Cyclic prime-power factors of one prime are regrouped into an
/// `AbelianPGroupProduct`. Two-generator families are accepted only when
/// they are 2-groups.
pub fn sylow_decomposition(spec: &GroupSpec) -> Result<Vec<(u64, GroupSpec)>> {
    spec.validate()?;
    let mut by_prime: BTreeMap<u64, Vec<GroupSpec>> = BTreeMap::new();
    for atom in spec.atoms() {
        match atom {
            GroupSpec::Cyclic(n) => {
                for (p, e) in factorize(n) {
                    by_prime.entry(p).or_default().push(GroupSpec::Cyclic(p.pow(e)));
                }
            }
            GroupSpec::Dihedral(o) | GroupSpec::Quaternion(o) | GroupSpec::SemiDihedral(o) => {
                if prime_power_base(o) != Some(2) {
                    return Err(Error::NotNilpotent(spec.canonical_name()));
                }
                by_prime.entry(2).or_default().push(atom);
            }
            _ => unreachable!("atoms are families"),
        }
    }
    Ok(by_prime
        .into_iter()
        .map(|(p, mut parts)| {
            let merged = if parts.len() == 1 {
                parts.pop().unwrap()
            } else if parts.iter().all(|s| matches!(s, GroupSpec::Cyclic(_))) {
                let mut orders: Vec<u64> = parts.iter().map(GroupSpec::order).collect();
                orders.sort_unstable_by(|a, b| b.cmp(a));
                GroupSpec::AbelianPGroupProduct(orders)
            } else {
                GroupSpec::Product(parts)
            };
            (p, merged)
        })
        .collect())
}

#[derive(Debug)]
pub struct SylowFactor {
    pub prime: u64,
    /// The Sylow subgroup as a standalone group.
    pub group: Group,
    /// `members[k]` is the element of the parent group at local index `k`.
    pub members: Vec<usize>,
}

/// The internal direct decomposition `G = P_1 x ... x P_k` of a nilpotent group.
#[derive(Debug)]
pub struct SylowFactors {
    pub order: usize,
    pub factors: Vec<SylowFactor>,
    /// Per element of `G`, its local index in each factor.
    coords: Vec<Vec<usize>>,
    by_packed: Vec<usize>,
}

impl SylowFactors {
    /// Extracts the Sylow subgroups of `group` and checks that their product
    /// map is a bijection onto `group`. Fails when the group is not nilpotent.
    pub fn from_group(group: &Group) -> Result<SylowFactors> {
        let order = group.order();
        let not_nilpotent = || Error::NotNilpotent(group.name().to_string());
        let mut factors = Vec::new();
        for (p, e) in factorize(order as u64) {
            let members: Vec<usize> = (0..order)
                .filter(|&x| {
                    let o = u64::from(group.element_order(x));
                    o == 1 || prime_power_base(o) == Some(p)
                })
                .collect();
            if members.len() as u64 != p.pow(e) {
                return Err(not_nilpotent());
            }
            let (sub, members) = group.subgroup(format!("{}[{p}]", group.name()), &members)?;
            factors.push(SylowFactor { prime: p, group: sub, members });
        }

        let mut coords = vec![Vec::new(); order];
        let mut by_packed = Vec::with_capacity(order);
        let mut tuple = vec![0usize; factors.len()];
        'outer: loop {
            let product = tuple
                .iter()
                .zip(&factors)
                .fold(group.identity(), |acc, (&k, f)| group.mul(acc, f.members[k]));
            if !coords[product].is_empty() {
                return Err(not_nilpotent());
            }
            coords[product] = tuple.clone();
            by_packed.push(product);
            for slot in (0..tuple.len()).rev() {
                tuple[slot] += 1;
                if tuple[slot] < factors[slot].members.len() {
                    continue 'outer;
                }
                tuple[slot] = 0;
            }
            break;
        }
        Ok(SylowFactors { order, factors, coords, by_packed })
    }

    pub fn primes(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.prime).collect()
    }

    pub fn groups(&self) -> Vec<&Group> {
        self.factors.iter().map(|f| &f.group).collect()
    }

    /// Local indices of `x` in each Sylow factor.
    pub fn coords(&self, x: usize) -> &[usize] {
        &self.coords[x]
    }

    /// Position of `x` in the mixed-radix enumeration of coordinate tuples,
    /// which is also its vertex index in the strong product of per-factor graphs.
    pub fn packed(&self, x: usize) -> usize {
        self.coords[x]
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&k, f)| acc * f.members.len() + k)
    }

    /// Inverse of [`SylowFactors::coords`].
    pub fn element(&self, coords: &[usize]) -> usize {
        let packed = coords
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&k, f)| acc * f.members.len() + k);
        self.by_packed[packed]
    }

    /// The Sylow factor of prime 2, if any.
    pub fn two_part(&self) -> Option<&SylowFactor> {
        self.factors.iter().find(|f| f.prime == 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn decomp(s: &str) -> Vec<(u64, String)> {
        sylow_decomposition(&s.parse().unwrap())
            .unwrap()
            .into_iter()
            .map(|(p, f)| (p, f.canonical_name()))
            .collect()
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(decomp("Z12"), vec![(2, "Z4".into()), (3, "Z3".into())]);
        assert_eq!(decomp("Q8xZ3"), vec![(2, "Q8".into()), (3, "Z3".into())]);
        assert_eq!(
            decomp("Z30"),
            vec![(2, "Z2".into()), (3, "Z3".into()), (5, "Z5".into())]
        );
        let regrouped = sylow_decomposition(&"Z12xZ2".parse().unwrap()).unwrap();
        assert_eq!(regrouped[0].1, GroupSpec::AbelianPGroupProduct(vec![4, 2]));
    }

    #[test]
    fn non_nilpotent_rejected() {
        for s in ["D12", "SD24", "Q12", "Q24xZ5"] {
            assert!(matches!(
                sylow_decomposition(&s.parse().unwrap()),
                Err(Error::NotNilpotent(_))
            ));
            let g = Group::build(&s.parse().unwrap()).unwrap();
            assert!(SylowFactors::from_group(&g).is_err(), "{s}");
        }
        assert_eq!(decomp("D8"), vec![(2, "D8".into())]);
    }

    #[test]
    fn internal_decomposition_round_trips() {
        for s in ["Z12", "Q8xZ3", "Z4xZ2xZ9", "Z30"] {
            let g = Group::build(&s.parse().unwrap()).unwrap();
            let syl = SylowFactors::from_group(&g).unwrap();
            for x in 0..g.order() {
                assert_eq!(syl.element(syl.coords(x)), x);
                let o: u32 = syl
                    .coords(x)
                    .iter()
                    .zip(&syl.factors)
                    .map(|(&k, f)| f.group.element_order(k))
                    .product();
                assert_eq!(o, g.element_order(x));
            }
        }
    }

    #[test]
    fn order_multisets_match_decomposition() {
        for s in ["Z12", "Q8xZ3", "Z6xZ10", "Z4xZ6xZ9"] {
            let spec: GroupSpec = s.parse().unwrap();
            let factors: Vec<GroupSpec> = sylow_decomposition(&spec).unwrap().into_iter().map(|(_, f)| f).collect();
            let rebuilt = Group::build(&GroupSpec::Product(factors)).unwrap();
            let original = Group::build(&spec).unwrap();
            let mut a = original.element_orders().to_vec();
            let mut b = rebuilt.element_orders().to_vec();
            a.sort_unstable();
            b.sort_unstable();
            assert_eq!(a, b, "{s}");
        }
    }
}
