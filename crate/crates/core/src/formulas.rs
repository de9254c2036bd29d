//! Number-theoretic helpers and the closed-form metric dimension results.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{sylow_decomposition, GroupSpec, SylowFactors};
use crate::group::Group;
use crate::twins::TwinPartition;

/// Prime factorization by trial division, as ascending `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// `Some(p)` when `n = p^k` for a prime `p` and `k >= 1`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    match factorize(n).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn tau(n: u64) -> u64 {
    factorize(n).iter().map(|&(_, e)| u64::from(e) + 1).product()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Which of the two closed forms applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// `n = 2^k p`, `k > 1`, `p` an odd prime: the `+2` form.
    Special,
    /// Every other non-prime-power order: the `+1` form.
    General,
    /// Prime-power order. The difference graph is empty and no value exists.
    UndefinedPrimePower,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Special => "special",
            Branch::General => "general",
            Branch::UndefinedPrimePower => "undefined-prime-power",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaResult {
    pub value: Option<u64>,
    pub branch: Branch,
    pub n: u64,
    pub phi: u64,
    pub tau: u64,
}

impl FormulaResult {
    pub fn is_defined(&self) -> bool {
        self.value.is_some()
    }
}

/// True iff `n = 2^k * p` with `k > 1` and `p` an odd prime.
///
/// Prime powers have no branch at all, so they report [`Branch::UndefinedPrimePower`]
/// through [`special_case_branch`]; this helper returns `false` for them.
pub fn special_case_cyclic(n: u64) -> bool {
    special_case_branch(n) == Branch::Special
}

pub fn special_case_branch(n: u64) -> Branch {
    match factorize(n).as_slice() {
        [] | [_] => Branch::UndefinedPrimePower,
        [(2, k), (p, 1)] if *k > 1 && *p != 2 => Branch::Special,
        _ => Branch::General,
    }
}

/// `n - φ(n) - τ(n) + 2` on the special branch, `+ 1` otherwise.
pub fn dim_formula_cyclic(n: u64) -> FormulaResult {
    let phi = euler_phi(n);
    let tau = tau(n);
    let branch = special_case_branch(n);
    let value = match branch {
        Branch::Special => Some(n + 2 - phi - tau),
        Branch::General => Some(n + 1 - phi - tau),
        Branch::UndefinedPrimePower => None,
    };
    FormulaResult { value, branch, n, phi, tau }
}

/// Dimension of the difference graph of `D_{2n}`; the same closed form as `Z_n`.
pub fn dim_formula_dihedral(n: u64) -> FormulaResult {
    dim_formula_cyclic(n)
}

/// Dimension for `Q_{4n}`, evaluated on the rotation subgroup order `2n`.
pub fn dim_formula_quaternion(n: u64) -> FormulaResult {
    dim_formula_cyclic(2 * n)
}

/// Dimension for `SD_{8n}`, evaluated on the rotation subgroup order `4n`.
pub fn dim_formula_semidihedral(n: u64) -> FormulaResult {
    dim_formula_cyclic(4 * n)
}

/// Closed-form value for a family spec, when the family has one.
pub fn dim_formula_for_spec(spec: &GroupSpec) -> Option<FormulaResult> {
    match spec {
        GroupSpec::Cyclic(n) => Some(dim_formula_cyclic(*n)),
        GroupSpec::Dihedral(order) => Some(dim_formula_dihedral(order / 2)),
        GroupSpec::Quaternion(order) => Some(dim_formula_quaternion(order / 4)),
        GroupSpec::SemiDihedral(order) => Some(dim_formula_semidihedral(order / 8)),
        _ => cyclic_order(spec).map(dim_formula_cyclic),
    }
}

/// `Some(n)` when the spec is a product of cyclic factors with pairwise
/// coprime orders, hence isomorphic to `Z_n`.
pub fn cyclic_order(spec: &GroupSpec) -> Option<u64> {
    let mut acc = 1;
    for atom in spec.atoms() {
        let GroupSpec::Cyclic(n) = atom else {
            return None;
        };
        if gcd(acc, n) != 1 {
            return None;
        }
        acc *= n;
    }
    Some(acc)
}

/// Number of twin classes of the difference graph of `Z_n`: `τ(n) - 2`.
pub fn class_count_cyclic(n: u64) -> Result<u64> {
    if n < 2 || prime_power_base(n).is_some() {
        return Err(Error::Precondition(format!(
            "class count needs a non-prime-power order, got {n}"
        )));
    }
    Ok(tau(n) - 2)
}

/// `|G| - (|M(P_1)| ... |M(P_k)| + 1)`, or `None` when `G` is a p-group.
///
/// For a single Sylow factor the difference graph is always empty and the
/// counting argument behind the formula does not apply.
pub fn vertex_count_nilpotent(spec: &GroupSpec) -> Result<Option<u64>> {
    let factors = sylow_decomposition(spec)?;
    if factors.len() < 2 {
        return Ok(None);
    }
    let mut product = 1u64;
    for (_, factor) in &factors {
        let group = Group::build(factor)?;
        product *= group.maximal_generators().len() as u64;
    }
    Ok(Some(spec.order() - (product + 1)))
}

/// `Z_{2^n} x G'` with `n > 1`, or `Q_{4m} x G'` with `m` a power of 2, where
/// `G'` is a Sylow p-subgroup with a maximal cyclic subgroup of order `p`.
///
/// A 2-group has a unique involution exactly when it is cyclic or
/// generalized quaternion, so the 2-part is tested intrinsically.
pub fn nbh_special_form(sylow: &SylowFactors) -> bool {
    let [two, odd] = sylow.factors.as_slice() else {
        return false;
    };
    if two.prime != 2 {
        return false;
    }
    let p2 = &two.group;
    p2.order() >= 4
        && p2.count_elements_of_order(2) == 1
        && odd
            .group
            .maximal_cyclic_subgroups()
            .iter()
            .any(|c| c.order as u64 == odd.prime)
}

/// `|G| - (Π |M(P_i)| + number of twin classes of D(G))`.
pub fn alpha_bound(sylow: &SylowFactors, partition: &TwinPartition) -> Result<u64> {
    if partition.classes.is_empty() {
        return Err(Error::EmptyDifferenceGraph);
    }
    let product: u64 = sylow
        .factors
        .iter()
        .map(|f| f.group.maximal_generators().len() as u64)
        .product();
    let order = sylow.order as u64;
    let subtract = product + partition.classes.len() as u64;
    order.checked_sub(subtract).ok_or_else(|| {
        Error::Precondition(format!("alpha would be negative: {order} - {subtract}"))
    })
}
