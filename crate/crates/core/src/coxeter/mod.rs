//! Root systems and fully enumerated finite Weyl groups.

mod group;
mod roots;

pub use group::{CoxeterGroup, Element, DEFAULT_MAX_ORDER};
pub use roots::RootSystem;

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoxeterError {
    #[error("unsupported Cartan type `{0}`")]
    UnsupportedType(String),
    #[error("group order exceeds the cap of {cap} elements")]
    OrderCapExceeded { cap: usize },
    #[error("malformed element word `{word}`: {reason}")]
    MalformedWord { word: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self, CoxeterError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::G => rank == 2,
        };
        let t = CartanType { family, rank };
        if ok {
            Ok(t)
        } else {
            Err(CoxeterError::UnsupportedType(t.to_string()))
        }
    }

    /// Known group order, without building the group.
    pub fn expected_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::G => 12,
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D)
    }

    /// `c[i][j] = <α_j, α_i^∨>`, so that `s_i(α_j) = α_j - c[i][j] α_i`.
    ///
    /// Bourbaki numbering: in `B_n` the last simple root is short, in `C_n`
    /// it is long, in `G_2` the first one is short.
    pub fn cartan_matrix(&self) -> Vec<Vec<i32>> {
        let n = self.rank;
        let mut c = vec![vec![0; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        match self.family {
            Family::A | Family::B | Family::C => {
                for i in 0..n - 1 {
                    c[i][i + 1] = -1;
                    c[i + 1][i] = -1;
                }
                match self.family {
                    Family::B => c[n - 1][n - 2] = -2,
                    Family::C => c[n - 2][n - 1] = -2,
                    _ => {}
                }
            }
            Family::D => {
                for i in 0..n - 2 {
                    c[i][i + 1] = -1;
                    c[i + 1][i] = -1;
                }
                c[n - 3][n - 1] = -1;
                c[n - 1][n - 3] = -1;
            }
            Family::G => {
                c[0][1] = -3;
                c[1][0] = -1;
            }
        }
        c
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = CoxeterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || CoxeterError::UnsupportedType(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('G') => Family::G,
            _ => return Err(err()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| err())?;
        CartanType::new(family, rank)
    }
}
