//! The Iwahori-Hecke algebra in the `T_w` basis, with coefficients in
//! `Z[q, q^{-1}]`, and the functionals `Λ_w`.

use crate::coxeter::{CoxeterGroup, Element};
use crate::polyring::LaurentPoly;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// `Σ c_w T_w` with no zero coefficient stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HeckeElem {
    coeffs: BTreeMap<Element, LaurentPoly>,
}

impl HeckeElem {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis element `T_w`.
    pub fn basis(w: Element) -> Self {
        let mut h = Self::zero();
        h.add_term(w, &LaurentPoly::one(0));
        h
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, w: Element) -> LaurentPoly {
        self.coeffs.get(&w).cloned().unwrap_or_else(|| LaurentPoly::zero(0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (Element, &LaurentPoly)> {
        self.coeffs.iter().map(|(&w, c)| (w, c))
    }

    /// Elements with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = Element> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn add_term(&mut self, w: Element, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(w).or_insert_with(|| LaurentPoly::zero(0));
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&w);
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (&w, a) in &self.coeffs {
            out.add_term(w, &(a * c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&w, c) in &other.coeffs {
            out.add_term(w, c);
        }
        out
    }
}

/// Multiplication and evaluation in the Hecke algebra of one group.
pub struct Hecke<'g> {
    group: &'g CoxeterGroup,
    q: LaurentPoly,
    q_minus_one: LaurentPoly,
}

impl<'g> Hecke<'g> {
    pub fn new(group: &'g CoxeterGroup) -> Self {
        let q = LaurentPoly::q_pow(0, 1);
        let q_minus_one = &q - &LaurentPoly::one(0);
        Hecke {
            group,
            q,
            q_minus_one,
        }
    }

    pub fn group(&self) -> &'g CoxeterGroup {
        self.group
    }

    /// `a · T_{s_i}`: `T_y T_s = T_{ys}` if `ys > y`, else `(q-1) T_y + q T_{ys}`.
    pub fn mul_generator_right(&self, a: &HeckeElem, i: usize) -> HeckeElem {
        let g = self.group;
        let mut out = HeckeElem::zero();
        for (y, c) in a.terms() {
            let ys = g.right_mul_gen(y, i);
            if g.is_right_descent(y, i) {
                out.add_term(y, &(c * &self.q_minus_one));
                out.add_term(ys, &(c * &self.q));
            } else {
                out.add_term(ys, c);
            }
        }
        out
    }

    /// `a · T_w`, folding a reduced word of `w` one generator at a time.
    pub fn mul_basis_right(&self, a: &HeckeElem, w: Element) -> HeckeElem {
        self.group
            .reduced_word(w)
            .into_iter()
            .fold(a.clone(), |acc, i| self.mul_generator_right(&acc, i))
    }

    pub fn t_mul(&self, a: &HeckeElem, b: &HeckeElem) -> HeckeElem {
        let mut out = HeckeElem::zero();
        for (y, c) in b.terms() {
            out = out.add(&self.mul_basis_right(a, y).scale(c));
        }
        out
    }

    /// `T_x T_y`
    pub fn basis_product(&self, x: Element, y: Element) -> HeckeElem {
        self.mul_basis_right(&HeckeElem::basis(x), y)
    }

    /// `Λ_w(a) = Σ_{y ≤ w} a_y q^{ℓ(y)}`.
    pub fn lambda(&self, w: Element, a: &HeckeElem) -> LaurentPoly {
        let g = self.group;
        let mut out = LaurentPoly::zero(0);
        for (y, c) in a.terms() {
            if g.bruhat_leq(y, w) {
                out += &c.shift_q(g.length(y) as i32);
            }
        }
        out
    }

    /// `Θ(x, y, w) = Λ_w(T_x T_{y^{-1}})`.
    pub fn theta(&self, x: Element, y: Element, w: Element) -> LaurentPoly {
        let prod = self.basis_product(x, self.group.inv(y));
        self.lambda(w, &prod)
    }
}

/// All values `Θ(x, y, w)`, indexed `[x][y][w]`.
pub struct ThetaTable {
    order: usize,
    values: Vec<LaurentPoly>,
}

impl ThetaTable {
    /// Computes every product `T_x T_{y^{-1}}` once and applies all `Λ_w` to
    /// it. Rows for different `x` are built in parallel and collected; no
    /// shared state is mutated.
    pub fn build(group: &CoxeterGroup) -> Self {
        let n = group.order();
        let elems: Vec<Element> = group.elements().collect();
        let rows: Vec<Vec<LaurentPoly>> = elems
            .par_iter()
            .map(|&x| {
                let hecke = Hecke::new(group);
                let mut row = Vec::with_capacity(n * n);
                for &y in &elems {
                    let prod = hecke.basis_product(x, group.inv(y));
                    for &w in &elems {
                        row.push(hecke.lambda(w, &prod));
                    }
                }
                row
            })
            .collect();
        ThetaTable {
            order: n,
            values: rows.into_iter().flatten().collect(),
        }
    }

    pub fn get(&self, x: Element, y: Element, w: Element) -> &LaurentPoly {
        let n = self.order;
        &self.values[(x.index() * n + y.index()) * n + w.index()]
    }
}
