//! Exact arithmetic for Laurent polynomials in `q, x1..xr` and for rational
//! functions whose denominators are products of binomials `(1 - x^β)` with
//! `β` a positive root.
//!
//! The variable `x_i` stands for the torus coordinate `z^{α_i}` attached to the
//! i-th simple root, so for a root `β = Σ c_i α_i` the monomial `z^β` is
//! `x1^c1 * ... * xr^cr`.

mod laurent;
mod rational;

pub use laurent::{ExponentVector, LaurentPoly};
pub use rational::RationalFn;

use smallvec::SmallVec;
use std::cmp::Ordering;
use std::fmt;

/// Inline storage for exponent and root coordinate vectors.
pub type Coords = SmallVec<[i32; 8]>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("polynomial depends on the torus variables: {0}")]
    NotQOnly(String),
}

/// A root written in the simple-root basis. Used as the exponent of the
/// binomial `1 - x^β` in denominators.
///
/// Ordered by height, then so that `α1 < α2 < ... < α1 + α2 < ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root(pub Coords);

impl Root {
    pub fn new(coords: &[i32]) -> Self {
        Root(coords.iter().copied().collect())
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut c = Coords::from_elem(0, rank);
        c[i] = 1;
        Root(c)
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&c| c <= 0) && self.0.iter().any(|&c| c < 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }
}

impl Ord for Root {
    fn cmp(&self, other: &Self) -> Ordering {
        self.height()
            .cmp(&other.height())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Root {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Root {
    /// Renders the monomial `x^β`, e.g. `x1*x2^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if c == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, c)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}
