use super::{LaurentPoly, PolyError, Root};
use num_rational::BigRational;
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `num / Π (1 - x^β)^{m_β}` with `β` ranging over positive roots.
///
/// Values are kept reduced: no factor of the denominator divides the
/// numerator, and the zero function has an empty denominator.
#[derive(Debug, Clone)]
pub struct RationalFn {
    num: LaurentPoly,
    den: BTreeMap<Root, u32>,
}

impl RationalFn {
    /// Builds `num / Π (1 - x^β)` and reduces it. Repeated roots in `den`
    /// count with multiplicity.
    pub fn new(num: LaurentPoly, den: impl IntoIterator<Item = Root>) -> Self {
        let mut multiset = BTreeMap::new();
        for beta in den {
            assert_eq!(beta.rank(), num.arity(), "denominator root has wrong arity");
            *multiset.entry(beta).or_insert(0) += 1;
        }
        Self::from_parts(num, multiset)
    }

    fn from_parts(num: LaurentPoly, den: BTreeMap<Root, u32>) -> Self {
        let mut f = RationalFn { num, den };
        f.reduce();
        f
    }

    pub fn zero(arity: usize) -> Self {
        Self::from_poly(LaurentPoly::zero(arity))
    }

    pub fn one(arity: usize) -> Self {
        Self::from_poly(LaurentPoly::one(arity))
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        RationalFn {
            num,
            den: BTreeMap::new(),
        }
    }

    /// `(1 - q^{-1} x^β) / (1 - x^β)`.
    pub fn gk_factor(beta: &Root) -> Self {
        let arity = beta.rank();
        let num = &LaurentPoly::one(arity) - &LaurentPoly::monomial(arity, 1, -1, beta.coords());
        Self::new(num, [beta.clone()])
    }

    pub fn arity(&self) -> usize {
        self.num.arity()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    /// Denominator roots with multiplicities, in root order.
    pub fn denominator(&self) -> &BTreeMap<Root, u32> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the reduced denominator is empty.
    pub fn is_laurent_poly(&self) -> bool {
        self.den.is_empty()
    }

    /// The value as a polynomial, if the reduced denominator is empty.
    pub fn as_laurent_poly(&self) -> Option<&LaurentPoly> {
        self.den.is_empty().then_some(&self.num)
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let mut kept = BTreeMap::new();
        for (beta, mult) in std::mem::take(&mut self.den) {
            let mut left = mult;
            while left > 0 {
                match self.num.binomial_divide(&beta) {
                    Some(q) => {
                        self.num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                kept.insert(beta, left);
            }
        }
        self.den = kept;
    }

    fn check_arity(&self, other: &Self) -> Result<(), PolyError> {
        if self.arity() != other.arity() {
            Err(PolyError::ArityMismatch(self.arity(), other.arity()))
        } else {
            Ok(())
        }
    }

    /// Numerator multiplied by the factors of `common` missing from `den`.
    fn numerator_over(&self, common: &BTreeMap<Root, u32>) -> LaurentPoly {
        let mut num = self.num.clone();
        for (beta, &m) in common {
            let have = self.den.get(beta).copied().unwrap_or(0);
            for _ in have..m {
                num = num.mul_binomial(beta);
            }
        }
        num
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_arity(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let mut common = self.den.clone();
        for (beta, &m) in &other.den {
            let e = common.entry(beta.clone()).or_insert(0);
            *e = (*e).max(m);
        }
        let num = &self.numerator_over(&common) + &other.numerator_over(&common);
        Ok(Self::from_parts(num, common))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_arity(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.arity()));
        }
        let mut den = self.den.clone();
        for (beta, &m) in &other.den {
            *den.entry(beta.clone()).or_insert(0) += m;
        }
        Ok(Self::from_parts(&self.num * &other.num, den))
    }

    /// Multiplies by a polynomial of the same arity.
    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        Self::from_parts(&self.num * p, self.den.clone())
    }

    /// Exact equality by cross-multiplication of the two denominators.
    pub fn checked_eq(&self, other: &Self) -> Result<bool, PolyError> {
        self.check_arity(other)?;
        let mut lhs = self.num.clone();
        for (beta, &m) in &other.den {
            for _ in 0..m {
                lhs = lhs.mul_binomial(beta);
            }
        }
        let mut rhs = other.num.clone();
        for (beta, &m) in &self.den {
            for _ in 0..m {
                rhs = rhs.mul_binomial(beta);
            }
        }
        Ok(lhs == rhs)
    }

    /// Replaces `q` by `q^{-1}` in the numerator.
    pub fn bar(&self) -> Self {
        RationalFn {
            num: self.num.bar_q(),
            den: self.den.clone(),
        }
    }

    /// Exact value at rational `q` and `x1..xr`; `None` at a pole.
    pub fn eval(&self, q: &BigRational, x: &[BigRational]) -> Option<BigRational> {
        let mut den = BigRational::one();
        for (beta, &m) in &self.den {
            let xb = LaurentPoly::x_pow(beta).eval(q, x);
            for _ in 0..m {
                den *= BigRational::one() - &xb;
            }
        }
        if num_traits::Zero::is_zero(&den) {
            return None;
        }
        Some(self.num.eval(q, x) / den)
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        self.checked_eq(other).unwrap_or(false)
    }
}

impl Eq for RationalFn {}

impl From<LaurentPoly> for RationalFn {
    fn from(p: LaurentPoly) -> Self {
        RationalFn::from_poly(p)
    }
}

impl Add for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        self.checked_add(rhs).expect("RationalFn addition")
    }
}

impl Sub for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self.checked_add(&-rhs).expect("RationalFn subtraction")
    }
}

impl Mul for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        self.checked_mul(rhs).expect("RationalFn multiplication")
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFn {
    /// `(num) / (1 - x1)` for a single factor, `(num) / ((1 - x1)*(1 - x2)^2)`
    /// for several; a bare numerator when the denominator is empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let factors: Vec<String> = self
            .den
            .iter()
            .map(|(beta, &m)| {
                if m == 1 {
                    format!("(1 - {beta})")
                } else {
                    format!("(1 - {beta})^{m}")
                }
            })
            .collect();
        if factors.len() == 1 {
            write!(f, "({}) / {}", self.num, factors[0])
        } else {
            write!(f, "({}) / ({})", self.num, factors.join("*"))
        }
    }
}
