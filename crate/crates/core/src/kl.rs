//! Kazhdan-Lusztig polynomials `P_{u,v}` and their inverses `Q_{u,v}`.

use crate::coxeter::{CoxeterGroup, Element};
use crate::hecke::ThetaTable;
use crate::polyring::LaurentPoly;
use crate::rpoly::ClassicalR;

/// `P_{u,v}` for every pair, indexed `[u][v]`.
pub struct KLTable {
    order: usize,
    longest: Element,
    values: Vec<LaurentPoly>,
}

impl KLTable {
    /// Solves `q^{ℓ(v)-ℓ(u)} P̄_{u,v} - P_{u,v} = Σ_{u<z≤v} R_{u,z} P_{z,v}` for
    /// `P_{u,v}`, by induction on `ℓ(v) - ℓ(u)`. The left side splits by
    /// degree because `deg P_{u,v} ≤ (ℓ(v)-ℓ(u)-1)/2`, so `P_{u,v}` is minus
    /// the part of the right side in degrees up to that bound.
    pub fn build(group: &CoxeterGroup, r: &ClassicalR) -> Self {
        let n = group.order();
        let mut values = vec![LaurentPoly::zero(0); n * n];
        for v in group.elements() {
            // elements are numbered compatibly with length, so walking u
            // downwards visits every z with u < z ≤ v first
            for u in group.elements().rev() {
                let idx = u.index() * n + v.index();
                if u == v {
                    values[idx] = LaurentPoly::one(0);
                    continue;
                }
                if !group.bruhat_leq(u, v) {
                    continue;
                }
                let mut rhs = LaurentPoly::zero(0);
                for z in group.interval(u, v) {
                    if z != u {
                        rhs += &(r.get(u, z) * &values[z.index() * n + v.index()]);
                    }
                }
                let bound = ((group.length(v) - group.length(u) - 1) / 2) as i32;
                let mut p = LaurentPoly::zero(0);
                for (e, c) in rhs.terms() {
                    if e.q_degree <= bound {
                        p -= &LaurentPoly::monomial(0, c.clone(), e.q_degree, &[]);
                    }
                }
                values[idx] = p;
            }
        }
        KLTable {
            order: n,
            longest: group.longest(),
            values,
        }
    }

    pub fn p(&self, u: Element, v: Element) -> &LaurentPoly {
        &self.values[u.index() * self.order + v.index()]
    }

    /// `Q_{u,v} = P_{w0 v, w0 u}`; needs the group to form `w0 v`.
    pub fn q(&self, group: &CoxeterGroup, u: Element, v: Element) -> &LaurentPoly {
        let w0 = self.longest;
        self.p(group.mul(w0, v), group.mul(w0, u))
    }
}

/// Triples `(x, y, w)` with `x y^{-1} ≤ w` and `P_{xy^{-1}, w} = 1` for which
/// `Θ(x, y, w)` is not a single power of `q`.
pub fn check_theta_power_conjecture(
    group: &CoxeterGroup,
    theta: &ThetaTable,
    kl: &KLTable,
) -> Vec<(Element, Element, Element)> {
    let mut violations = Vec::new();
    for x in group.elements() {
        for y in group.elements() {
            let xy = group.mul(x, group.inv(y));
            for w in group.elements() {
                if !group.bruhat_leq(xy, w) || !kl.p(xy, w).is_one() {
                    continue;
                }
                if theta.get(x, y, w).as_q_power().is_none() {
                    violations.push((x, y, w));
                }
            }
        }
    }
    violations
}
