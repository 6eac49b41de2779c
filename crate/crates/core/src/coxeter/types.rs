use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;

/// An irreducible finite Coxeter type with the Bourbaki labelling.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Factor {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    H(usize),
    I2(usize),
}

impl Factor {
    pub fn rank(&self) -> usize {
        match *self {
            Factor::A(n) | Factor::B(n) | Factor::D(n) | Factor::E(n) | Factor::H(n) => n,
            Factor::F4 => 4,
            Factor::I2(_) => 2,
        }
    }

    /// Number of reflections (positive roots).
    pub fn num_reflections(&self) -> usize {
        match *self {
            Factor::A(n) => n * (n + 1) / 2,
            Factor::B(n) => n * n,
            Factor::D(n) => n * (n - 1),
            Factor::E(6) => 36,
            Factor::E(7) => 63,
            Factor::E(_) => 120,
            Factor::F4 => 24,
            Factor::H(3) => 15,
            Factor::H(_) => 60,
            Factor::I2(m) => m,
        }
    }

    pub fn group_order(&self) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match *self {
            Factor::A(n) => fact(n + 1),
            Factor::B(n) => (1u128 << n) * fact(n),
            Factor::D(n) => (1u128 << (n - 1)) * fact(n),
            Factor::E(6) => 51_840,
            Factor::E(7) => 2_903_040,
            Factor::E(_) => 696_729_600,
            Factor::F4 => 1152,
            Factor::H(3) => 120,
            Factor::H(_) => 14_400,
            Factor::I2(m) => 2 * m as u128,
        }
    }

    pub fn is_dihedral(&self) -> bool {
        matches!(self, Factor::I2(_))
    }

    /// Coxeter matrix entries `m(i, j)` for `i != j` (0-based generators).
    pub fn coxeter_entry(&self, i: usize, j: usize) -> usize {
        if i == j {
            return 1;
        }
        let (a, b) = (i.min(j), i.max(j));
        let bond = |m: usize| if b == a + 1 { m } else { 2 };
        match *self {
            Factor::A(_) => bond(3),
            Factor::B(n) => {
                if a == n - 2 && b == n - 1 {
                    4
                } else {
                    bond(3)
                }
            }
            Factor::D(n) => {
                if b == n - 1 {
                    // the last node hangs off node n-3
                    if a == n - 3 {
                        3
                    } else {
                        2
                    }
                } else {
                    bond(3)
                }
            }
            Factor::E(_) => match (a, b) {
                (0, 2) | (1, 3) => 3,
                (0, _) | (1, _) => 2,
                _ => bond(3),
            },
            Factor::F4 => match (a, b) {
                (1, 2) => 4,
                _ => bond(3),
            },
            Factor::H(_) => match (a, b) {
                (0, 1) => 5,
                _ => bond(3),
            },
            Factor::I2(m) => m,
        }
    }

    fn validate(self) -> Option<Self> {
        let ok = match self {
            Factor::A(n) => n >= 1,
            Factor::B(n) => n >= 2,
            Factor::D(n) => n >= 4,
            Factor::E(n) => (6..=8).contains(&n),
            Factor::F4 => true,
            Factor::H(n) => n == 3 || n == 4,
            Factor::I2(m) => m >= 3,
        };
        ok.then_some(self)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Factor::A(n) => write!(f, "A{n}"),
            Factor::B(n) => write!(f, "B{n}"),
            Factor::D(n) => write!(f, "D{n}"),
            Factor::E(n) => write!(f, "E{n}"),
            Factor::F4 => write!(f, "F4"),
            Factor::H(n) => write!(f, "H{n}"),
            Factor::I2(m) => write!(f, "I2({m})"),
        }
    }
}

impl FromStr for Factor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::InvalidType(s.to_string());
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("I2(").or_else(|| s.strip_prefix("i2(")) {
            let m = rest.strip_suffix(')').ok_or_else(bad)?;
            let m: usize = m.trim().parse().map_err(|_| bad())?;
            return Factor::I2(m).validate().ok_or_else(bad);
        }
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        let factor = match letter {
            'A' => Factor::A(n),
            'B' => Factor::B(n),
            'D' => Factor::D(n),
            'E' => Factor::E(n),
            'F' if n == 4 => Factor::F4,
            'H' => Factor::H(n),
            _ => return Err(bad()),
        };
        factor.validate().ok_or_else(bad)
    }
}

/// A finite Coxeter type, as a product of irreducible factors.
///
/// Generators are numbered consecutively through the factors, so in
/// `B2xA1` the generators 1, 2 belong to `B2` and 3 to `A1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CoxeterType {
    factors: Vec<Factor>,
}

impl CoxeterType {
    pub fn new(factors: Vec<Factor>) -> Result<Self, Error> {
        if factors.is_empty() {
            return Err(Error::InvalidType(String::new()));
        }
        Ok(Self { factors })
    }

    pub fn irreducible(factor: Factor) -> Self {
        Self {
            factors: vec![factor],
        }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(Factor::rank).sum()
    }

    pub fn num_reflections(&self) -> usize {
        self.factors.iter().map(Factor::num_reflections).sum()
    }

    pub fn group_order(&self) -> u128 {
        self.factors.iter().map(Factor::group_order).product()
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn has_dihedral_factor(&self) -> bool {
        self.factors.iter().any(Factor::is_dihedral)
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

impl FromStr for CoxeterType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let factors = s
            .split(['x', 'X', '×'])
            .map(str::parse)
            .collect::<Result<Vec<Factor>, _>>()
            .map_err(|_| Error::InvalidType(s.to_string()))?;
        CoxeterType::new(factors)
    }
}

impl Serialize for CoxeterType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for s in ["A3", "B4xA1", "I2(7)", "B2xA1", "E8", "F4", "H3", "D4xI2(5)xA1"] {
            let t: CoxeterType = s.parse().unwrap();
            assert_eq!(t.to_string(), s);
        }
    }

    #[test]
    fn rejects_bad_types() {
        for s in ["Z9", "A0", "B1", "D3", "E9", "F3", "H5", "I2(2)", "I2(", "", "A3x"] {
            assert!(s.parse::<CoxeterType>().is_err(), "{s}");
        }
    }

    #[test]
    fn rank_and_sizes() {
        let t: CoxeterType = "B4xA1".parse().unwrap();
        assert_eq!(t.rank(), 5);
        assert_eq!(t.num_reflections(), 17);
        assert_eq!(t.group_order(), 384 * 2);
    }

    #[test]
    fn e8_diagram() {
        let e8 = Factor::E(8);
        // 1-3-4-5-6-7-8 with 2 attached to 4
        assert_eq!(e8.coxeter_entry(0, 2), 3);
        assert_eq!(e8.coxeter_entry(1, 3), 3);
        assert_eq!(e8.coxeter_entry(1, 2), 2);
        assert_eq!(e8.coxeter_entry(2, 3), 3);
        assert_eq!(e8.coxeter_entry(0, 1), 2);
        assert_eq!(e8.coxeter_entry(6, 7), 3);
    }

    #[test]
    fn d_diagram() {
        let d5 = Factor::D(5);
        assert_eq!(d5.coxeter_entry(2, 3), 3);
        assert_eq!(d5.coxeter_entry(2, 4), 3);
        assert_eq!(d5.coxeter_entry(3, 4), 2);
    }
}
