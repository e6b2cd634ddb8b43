use super::{Coords, PolyError, Root};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// Exponents of one monomial `q^k * x1^a1 * ... * xr^ar`.
///
/// The derived ordering compares the torus exponents first and the `q`
/// exponent second; this is the term order used for rendering.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector {
    pub x_degrees: Coords,
    pub q_degree: i32,
}

impl ExponentVector {
    pub fn constant(arity: usize) -> Self {
        ExponentVector {
            x_degrees: Coords::from_elem(0, arity),
            q_degree: 0,
        }
    }

    pub fn new(q_degree: i32, x_degrees: &[i32]) -> Self {
        ExponentVector {
            x_degrees: x_degrees.iter().copied().collect(),
            q_degree,
        }
    }

    fn shifted(&self, q: i32, x: &[i32]) -> Self {
        ExponentVector {
            x_degrees: self.x_degrees.iter().zip(x).map(|(a, b)| a + b).collect(),
            q_degree: self.q_degree + q,
        }
    }

    fn is_x_free(&self) -> bool {
        self.x_degrees.iter().all(|&d| d == 0)
    }
}

/// Sparse Laurent polynomial in `q` and `x1..xr` with integer coefficients.
///
/// No stored coefficient is zero, so structural equality is polynomial
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    arity: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl LaurentPoly {
    pub fn zero(arity: usize) -> Self {
        LaurentPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, 1)
    }

    pub fn constant(arity: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(arity, c, 0, &vec![0; arity])
    }

    /// `c * q^q_degree * x^x_degrees`.
    pub fn monomial(arity: usize, c: impl Into<BigInt>, q_degree: i32, x_degrees: &[i32]) -> Self {
        assert_eq!(x_degrees.len(), arity, "exponent vector has wrong arity");
        let mut p = Self::zero(arity);
        p.add_term(ExponentVector::new(q_degree, x_degrees), c.into());
        p
    }

    /// `q^k` as a polynomial of the given arity.
    pub fn q_pow(arity: usize, k: i32) -> Self {
        Self::monomial(arity, 1, k, &vec![0; arity])
    }

    /// The monomial `x^β`.
    pub fn x_pow(beta: &Root) -> Self {
        Self::monomial(beta.rank(), 1, 0, beta.coords())
    }

    /// Builds a polynomial from `(coefficient, q_degree, x_degrees)` triples,
    /// merging like terms.
    pub fn from_terms<I, C>(arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (C, i32, Vec<i32>)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(arity);
        for (c, q, x) in terms {
            assert_eq!(x.len(), arity, "exponent vector has wrong arity");
            p.add_term(ExponentVector::new(q, &x), c.into());
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| e.q_degree == 0 && e.is_x_free() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &ExponentVector) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Coefficient of `q^k` in a polynomial without torus dependence.
    pub fn q_coeff(&self, k: i32) -> BigInt {
        self.coeff(&ExponentVector {
            x_degrees: Coords::from_elem(0, self.arity),
            q_degree: k,
        })
    }

    fn add_term(&mut self, e: ExponentVector, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &Self) -> Result<(), PolyError> {
        if self.arity != other.arity {
            Err(PolyError::ArityMismatch(self.arity, other.arity))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.shifted(eb.q_degree, &eb.x_degrees), ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiplies by the monomial `q^q_shift * x^x_shift`.
    pub fn mul_monomial(&self, q_shift: i32, x_shift: &[i32]) -> Self {
        assert_eq!(x_shift.len(), self.arity, "exponent vector has wrong arity");
        LaurentPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.shifted(q_shift, x_shift), c.clone()))
                .collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift_q(&self, k: i32) -> Self {
        LaurentPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.q_degree += k;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        LaurentPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by `1 - x^β`.
    pub fn mul_binomial(&self, beta: &Root) -> Self {
        let mut out = self.clone();
        for (e, c) in &self.terms {
            out.add_term(e.shifted(0, beta.coords()), -c);
        }
        out
    }

    /// Replaces `q` by `q^{-1}`.
    pub fn bar_q(&self) -> Self {
        LaurentPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.q_degree = -e.q_degree;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Exact quotient by `1 - x^β`, or `None` when the division leaves a
    /// remainder.
    ///
    /// Monomials are grouped into chains `m * x^{kβ}`; along each chain the
    /// polynomial is univariate in `t = x^β`, divisible by `1 - t` exactly when
    /// its coefficients sum to zero, with the prefix sums as quotient.
    pub fn binomial_divide(&self, beta: &Root) -> Option<Self> {
        assert_eq!(beta.rank(), self.arity, "root has wrong arity");
        let pivot = beta.coords().iter().position(|&c| c != 0)?;
        let step = beta.coords()[pivot];
        let mut chains: BTreeMap<ExponentVector, BTreeMap<i32, &BigInt>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e.x_degrees[pivot].div_euclid(step);
            let base = ExponentVector {
                x_degrees: e
                    .x_degrees
                    .iter()
                    .zip(beta.coords())
                    .map(|(a, b)| a - k * b)
                    .collect(),
                q_degree: e.q_degree,
            };
            chains.entry(base).or_default().insert(k, c);
        }
        let mut out = Self::zero(self.arity);
        for (base, chain) in chains {
            let (&kmin, _) = chain.iter().next().unwrap();
            let (&kmax, _) = chain.iter().next_back().unwrap();
            let mut running = BigInt::zero();
            for k in kmin..kmax {
                if let Some(&c) = chain.get(&k) {
                    running += c;
                }
                if !running.is_zero() {
                    let e = ExponentVector {
                        x_degrees: base
                            .x_degrees
                            .iter()
                            .zip(beta.coords())
                            .map(|(a, b)| a + k * b)
                            .collect(),
                        q_degree: base.q_degree,
                    };
                    out.terms.insert(e, running.clone());
                }
            }
            running += chain[&kmax];
            if !running.is_zero() {
                return None;
            }
        }
        Some(out)
    }

    /// True when no term carries a torus variable.
    pub fn is_x_free(&self) -> bool {
        self.terms.keys().all(ExponentVector::is_x_free)
    }

    /// Re-embeds an `x`-free polynomial into a ring with `arity` torus
    /// variables.
    pub fn with_arity(&self, arity: usize) -> Result<Self, PolyError> {
        if !self.is_x_free() {
            return Err(PolyError::NotQOnly(self.to_string()));
        }
        Ok(LaurentPoly {
            arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    (
                        ExponentVector {
                            x_degrees: Coords::from_elem(0, arity),
                            q_degree: e.q_degree,
                        },
                        c.clone(),
                    )
                })
                .collect(),
        })
    }

    /// Smallest and largest `q` exponent, or `None` for zero.
    pub fn q_degree_range(&self) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|e| e.q_degree);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d))))
    }

    /// If the polynomial is `q^k`, returns `k`.
    pub fn as_q_power(&self) -> Option<i32> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        (e.is_x_free() && c.is_one()).then_some(e.q_degree)
    }

    /// Sum of all coefficients, i.e. the value at `q = 1, x = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Sum of coefficients after setting `q = 1`, keeping torus variables.
    pub fn specialize_q_one(&self) -> Self {
        let mut out = Self::zero(self.arity);
        for (e, c) in &self.terms {
            out.add_term(
                ExponentVector {
                    x_degrees: e.x_degrees.clone(),
                    q_degree: 0,
                },
                c.clone(),
            );
        }
        out
    }

    /// Exact evaluation at rational values of `q` and `x1..xr`.
    pub fn eval(&self, q: &BigRational, x: &[BigRational]) -> BigRational {
        assert_eq!(x.len(), self.arity, "wrong number of torus values");
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone()) * powi(q, e.q_degree);
            for (xi, &d) in x.iter().zip(&e.x_degrees) {
                t *= powi(xi, d);
            }
            acc += t;
        }
        acc
    }
}

pub(crate) fn powi(base: &BigRational, exp: i32) -> BigRational {
    let p = num_traits::pow(base.clone(), exp.unsigned_abs() as usize);
    if exp < 0 {
        p.recip()
    } else {
        p
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.check_arity(rhs).expect("LaurentPoly addition");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.check_arity(rhs).expect("LaurentPoly subtraction");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("LaurentPoly addition")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("LaurentPoly subtraction")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("LaurentPoly multiplication")
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &ExponentVector) -> fmt::Result {
    let mut parts = Vec::new();
    match e.q_degree {
        0 => {}
        1 => parts.push("q".to_string()),
        d => parts.push(format!("q^{d}")),
    }
    for (i, &d) in e.x_degrees.iter().enumerate() {
        match d {
            0 => {}
            1 => parts.push(format!("x{}", i + 1)),
            d => parts.push(format!("x{}^{}", i + 1, d)),
        }
    }
    f.write_str(&parts.join("*"))
}

impl fmt::Display for LaurentPoly {
    /// Canonical rendering, e.g. `1 - q^-1*x1`. Terms are listed in ascending
    /// order of the torus exponents, then of the `q` exponent.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let constant = e.q_degree == 0 && e.is_x_free();
            if constant {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write_monomial(f, e)?;
            } else {
                write!(f, "{abs}*")?;
                write_monomial(f, e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x1(arity: usize) -> LaurentPoly {
        let mut x = vec![0; arity];
        x[0] = 1;
        LaurentPoly::monomial(arity, 1, 0, &x)
    }

    fn q(arity: usize) -> LaurentPoly {
        LaurentPoly::q_pow(arity, 1)
    }

    #[test]
    fn add_cancels() {
        let one = LaurentPoly::one(2);
        let x1x2 = LaurentPoly::monomial(2, 1, 0, &[1, 1]);
        let a = &one - &x1x2;
        let b = &x1x2 - &x1(2);
        assert_eq!(&a + &b, &one - &x1(2));
        assert_eq!(&a + &LaurentPoly::zero(2), a);
        assert_eq!(&q(0) + &q(0), LaurentPoly::monomial(0, 2, 1, &[]));
    }

    #[test]
    fn mul_examples() {
        let one = LaurentPoly::one(1);
        let x = x1(1);
        let x2 = LaurentPoly::monomial(1, 1, 0, &[2]);
        assert_eq!(&(&one - &x) * &(&one + &x), &one - &x2);
        assert_eq!(
            &LaurentPoly::q_pow(0, -1) * &LaurentPoly::q_pow(0, 1),
            LaurentPoly::one(0)
        );
        let qm1 = &q(0) - &LaurentPoly::one(0);
        let expected = LaurentPoly::from_terms(0, [(1, 2, vec![]), (-2, 1, vec![]), (1, 0, vec![])]);
        assert_eq!(&qm1 * &qm1, expected);
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let a = LaurentPoly::one(1);
        let b = LaurentPoly::one(2);
        assert_eq!(a.checked_add(&b), Err(PolyError::ArityMismatch(1, 2)));
        assert_eq!(a.checked_mul(&b), Err(PolyError::ArityMismatch(1, 2)));
    }

    #[test]
    fn bar_examples() {
        let one = LaurentPoly::one(0);
        assert_eq!((&one - &q(0)).bar_q(), &one - &LaurentPoly::q_pow(0, -1));
        let sym = &q(0) + &LaurentPoly::q_pow(0, -1);
        assert_eq!(sym.bar_q(), sym);
        let p = LaurentPoly::from_terms(1, [(3, 2, vec![1]), (-1, -5, vec![0])]);
        assert_eq!(p.bar_q().bar_q(), p);
    }

    #[test]
    fn binomial_divide_examples() {
        // x1 - x1*x2 = x1 (1 - x2)
        let p = LaurentPoly::from_terms(2, [(1, 0, vec![1, 0]), (-1, 0, vec![1, 1])]);
        assert_eq!(p.binomial_divide(&Root::new(&[0, 1])), Some(x1(2)));
        let p = LaurentPoly::from_terms(2, [(1, 0, vec![0, 0]), (-1, 0, vec![1, 1])]);
        assert_eq!(p.binomial_divide(&Root::new(&[1, 1])), Some(LaurentPoly::one(2)));
        let p = &LaurentPoly::one(2) + &x1(2);
        assert_eq!(p.binomial_divide(&Root::new(&[1, 0])), None);
        assert_eq!(
            LaurentPoly::zero(2).binomial_divide(&Root::new(&[1, 0])),
            Some(LaurentPoly::zero(2))
        );
    }

    #[test]
    fn binomial_divide_non_unit_step() {
        // (1 - x1^2 x2)(3 q x1^-1 + x2^4) divided by (1 - x1^2 x2)
        let beta = Root::new(&[2, 1]);
        let f = LaurentPoly::from_terms(2, [(3, 1, vec![-1, 0]), (1, 0, vec![0, 4])]);
        let p = f.mul_binomial(&beta);
        assert_eq!(p.binomial_divide(&beta), Some(f));
        let g = &p + &LaurentPoly::monomial(2, 1, 0, &[1, 0]);
        assert_eq!(g.binomial_divide(&beta), None);
    }

    #[test]
    fn rendering() {
        let p = LaurentPoly::from_terms(1, [(1, 0, vec![0]), (-1, -1, vec![1])]);
        assert_eq!(p.to_string(), "1 - q^-1*x1");
        let p = LaurentPoly::from_terms(0, [(1, 0, vec![]), (2, 1, vec![]), (2, 2, vec![]), (1, 3, vec![])]);
        assert_eq!(p.to_string(), "1 + 2*q + 2*q^2 + q^3");
        assert_eq!(LaurentPoly::zero(3).to_string(), "0");
        let p = LaurentPoly::from_terms(2, [(-4, 0, vec![0, 0]), (1, 2, vec![1, 3])]);
        assert_eq!(p.to_string(), "-4 + q^2*x1*x2^3");
    }

    #[test]
    fn q_power_detection() {
        assert_eq!(LaurentPoly::q_pow(0, 3).as_q_power(), Some(3));
        assert_eq!((&q(0) + &q(0)).as_q_power(), None);
        assert_eq!(x1(1).as_q_power(), None);
    }

    #[test]
    fn with_arity_rejects_torus_terms() {
        assert!(x1(1).with_arity(2).is_err());
        let p = LaurentPoly::q_pow(0, 2).with_arity(2).unwrap();
        assert_eq!(p, LaurentPoly::q_pow(2, 2));
    }
}
