use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulas::prime_power_base;

/// A compact description of a finite group.
///
/// Family orders are stored as group orders, so `Dihedral(12)` is `D_12`
/// with a rotation subgroup of order 6.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupSpec {
    Cyclic(u64),
    /// `Z_{q_1} x ... x Z_{q_k}` where every `q_i` is a power of one prime.
    AbelianPGroupProduct(Vec<u64>),
    Dihedral(u64),
    Quaternion(u64),
    SemiDihedral(u64),
    Product(Vec<GroupSpec>),
}

impl GroupSpec {
    pub fn order(&self) -> u64 {
        match self {
            GroupSpec::Cyclic(n)
            | GroupSpec::Dihedral(n)
            | GroupSpec::Quaternion(n)
            | GroupSpec::SemiDihedral(n) => *n,
            GroupSpec::AbelianPGroupProduct(qs) => qs.iter().product(),
            GroupSpec::Product(fs) => fs.iter().map(GroupSpec::order).product(),
        }
    }

    /// The atomic factors in input order, with products and p-group products expanded.
    pub fn atoms(&self) -> Vec<GroupSpec> {
        match self {
            GroupSpec::Product(fs) => fs.iter().flat_map(GroupSpec::atoms).collect(),
            GroupSpec::AbelianPGroupProduct(qs) => {
                qs.iter().map(|&q| GroupSpec::Cyclic(q)).collect()
            }
            other => vec![other.clone()],
        }
    }

    fn atom_name(&self) -> String {
        match self {
            GroupSpec::Cyclic(n) => format!("Z{n}"),
            GroupSpec::Dihedral(n) => format!("D{n}"),
            GroupSpec::Quaternion(n) => format!("Q{n}"),
            GroupSpec::SemiDihedral(n) => format!("SD{n}"),
            _ => unreachable!("not an atom"),
        }
    }

    fn kind_rank(&self) -> u8 {
        match self {
            GroupSpec::Cyclic(_) => 0,
            GroupSpec::Dihedral(_) => 1,
            GroupSpec::Quaternion(_) => 2,
            GroupSpec::SemiDihedral(_) => 3,
            _ => 4,
        }
    }

    /// Name with atomic factors sorted by order, then kind.
    pub fn canonical_name(&self) -> String {
        let mut atoms = self.atoms();
        atoms.sort_by_key(|a| (a.order(), a.kind_rank()));
        atoms
            .iter()
            .map(GroupSpec::atom_name)
            .collect::<Vec<_>>()
            .join("x")
    }

    /// Name with factors in input order. Parses back to an equal spec for
    /// everything except `AbelianPGroupProduct`, which parses as a `Product`.
    pub fn input_name(&self) -> String {
        self.atoms()
            .iter()
            .map(GroupSpec::atom_name)
            .collect::<Vec<_>>()
            .join("x")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |reason: &str| {
            Err(Error::FamilyConstraint {
                name: self.input_name(),
                reason: reason.to_string(),
            })
        };
        match self {
            GroupSpec::Cyclic(n) if *n < 2 => bad("cyclic groups need n >= 2"),
            GroupSpec::Dihedral(o) if o % 2 != 0 || *o < 6 => {
                bad("dihedral order must be 2n with n >= 3")
            }
            GroupSpec::Quaternion(o) if o % 4 != 0 || *o < 8 => {
                bad("generalized quaternion order must be 4n with n >= 2")
            }
            GroupSpec::SemiDihedral(o) if o % 8 != 0 || *o < 16 => {
                bad("semidihedral order must be 8n with n >= 2")
            }
            GroupSpec::AbelianPGroupProduct(qs) => {
                let base = qs.first().and_then(|&q| prime_power_base(q));
                match base {
                    Some(p) if qs.iter().all(|&q| prime_power_base(q) == Some(p)) => Ok(()),
                    _ => bad("factors must be powers of a single prime"),
                }
            }
            GroupSpec::Product(fs) if fs.is_empty() => bad("empty product"),
            GroupSpec::Product(fs) => fs.iter().try_for_each(GroupSpec::validate),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_name())
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_spec(s)
    }
}

/// Parses `Z<n> | D<2n> | Q<4n> | SD<8n>` joined by `x` into a spec.
pub fn parse_spec(text: &str) -> Result<GroupSpec> {
    let mut parser = Parser { src: text.as_bytes(), pos: 0 };
    let mut factors = vec![parser.atom()?];
    loop {
        parser.skip_ws();
        match parser.peek() {
            None => break,
            Some(b'x') | Some(b'X') => {
                parser.pos += 1;
                factors.push(parser.atom()?);
            }
            Some(c) => {
                return Err(parser.error(format!("expected `x` or end of input, found `{}`", c as char)))
            }
        }
    }
    let spec = if factors.len() == 1 {
        factors.pop().unwrap()
    } else {
        GroupSpec::Product(factors)
    };
    spec.validate()?;
    Ok(spec)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: String) -> Error {
        Error::Syntax { position: self.pos, message }
    }

    fn atom(&mut self) -> Result<GroupSpec> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let (ctor, width): (fn(u64) -> GroupSpec, usize) = if rest.starts_with(b"SD") {
            (GroupSpec::SemiDihedral, 2)
        } else {
            match rest.first() {
                Some(b'Z') => (GroupSpec::Cyclic, 1),
                Some(b'D') => (GroupSpec::Dihedral, 1),
                Some(b'Q') => (GroupSpec::Quaternion, 1),
                Some(c) => {
                    return Err(self.error(format!(
                        "expected one of Z, D, Q, SD, found `{}`",
                        *c as char
                    )))
                }
                None => return Err(self.error("unexpected end of input".into())),
            }
        };
        self.pos += width;
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a group order".into()));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let n: u64 = digits.parse().map_err(|_| Error::Syntax {
            position: start,
            message: format!("order `{digits}` out of range"),
        })?;
        Ok(ctor(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_atoms_and_products() {
        assert_eq!(parse_spec("Z12").unwrap(), GroupSpec::Cyclic(12));
        assert_eq!(
            parse_spec("Z4xZ3").unwrap(),
            GroupSpec::Product(vec![GroupSpec::Cyclic(4), GroupSpec::Cyclic(3)])
        );
        assert_eq!(
            parse_spec("Q8xZ3").unwrap(),
            GroupSpec::Product(vec![GroupSpec::Quaternion(8), GroupSpec::Cyclic(3)])
        );
        assert_eq!(parse_spec("SD16").unwrap(), GroupSpec::SemiDihedral(16));
        assert_eq!(parse_spec(" D12 x Z5 ").unwrap().order(), 60);
    }

    #[test]
    fn canonical_name_sorts_factors() {
        assert_eq!(parse_spec("Z4xZ3").unwrap().canonical_name(), "Z3xZ4");
        assert_eq!(parse_spec("Q8xZ3").unwrap().canonical_name(), "Z3xQ8");
        assert_eq!(parse_spec("Z8xD8").unwrap().canonical_name(), "Z8xD8");
        assert_eq!(parse_spec("Q8xZ3").unwrap().input_name(), "Q8xZ3");
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_spec("Z4yZ3") {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
        match parse_spec("Z") {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_spec(""), Err(Error::Syntax { .. })));
        assert!(matches!(parse_spec("Z4x"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn family_constraints() {
        for bad in ["D4", "Z1", "Q4", "Q10", "SD8", "SD20", "D7"] {
            assert!(
                matches!(parse_spec(bad), Err(Error::FamilyConstraint { .. })),
                "{bad} should be rejected"
            );
        }
        assert!(parse_spec("D6").is_ok());
    }
}
