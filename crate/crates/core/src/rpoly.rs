//! Deformed R-polynomials `r_{u,v}(z)`, the classical Kazhdan-Lusztig
//! R-polynomials `R_{u,v}(q)`, and the root sets `S(u,v)`, `S(u,v,w)`.

use crate::coxeter::{CoxeterGroup, Element};
use crate::demazure::Demazure;
use crate::polyring::{LaurentPoly, RationalFn, Root};

/// `r_{u,v}` for every pair, indexed `[u][v]`.
pub struct RTable {
    order: usize,
    values: Vec<RationalFn>,
}

/// `-v^{-1} α_s`, positive whenever `s v < v`.
pub fn recursion_root(group: &CoxeterGroup, v: Element, s: usize) -> Root {
    let alpha = group.root_system().simple_root(s).clone();
    group.apply_to_root(group.inv(v), &alpha).neg()
}

impl RTable {
    /// Fills the table by increasing length of `v`, always pivoting on the
    /// smallest left descent of `v`.
    pub fn build(group: &CoxeterGroup) -> Self {
        let n = group.order();
        let r = group.rank();
        let mut table = RTable {
            order: n,
            values: Vec::with_capacity(n * n),
        };
        table.values.resize(n * n, RationalFn::zero(r));
        table.values[0] = RationalFn::one(r);
        for v in group.elements().skip(1) {
            let s = group.left_descents(v).trailing_zeros() as usize;
            for u in group.elements() {
                let value = table.recurse_with(group, u, v, s);
                table.values[u.index() * n + v.index()] = value;
            }
        }
        table
    }

    /// Rebuilds a table from entries previously read out with [`RTable::entries`].
    pub fn from_entries(order: usize, values: Vec<RationalFn>) -> Option<Self> {
        (values.len() == order * order).then_some(RTable { order, values })
    }

    /// Entries in `[u][v]` order.
    pub fn entries(&self) -> &[RationalFn] {
        &self.values
    }

    pub fn get(&self, u: Element, v: Element) -> &RationalFn {
        &self.values[u.index() * self.order + v.index()]
    }

    /// One step of the recursion for `r_{u,v}` with the left descent `s` of
    /// `v`, reading `r_{u,sv}` and `r_{su,sv}` from the table:
    ///
    /// * `su < u`: `(1-q)/(1-z^β) r_{u,sv} + r_{su,sv}`
    /// * `su > u`: `(1-q) z^β/(1-z^β) r_{u,sv} + q r_{su,sv}`
    ///
    /// with `β = -v^{-1} α_s`.
    pub fn recurse_with(&self, group: &CoxeterGroup, u: Element, v: Element, s: usize) -> RationalFn {
        assert!(group.is_left_descent(v, s), "s must be a left descent of v");
        let r = group.rank();
        let sv = group.left_mul_gen(s, v);
        let su = group.left_mul_gen(s, u);
        let beta = recursion_root(group, v, s);
        let one_minus_q = &LaurentPoly::one(r) - &LaurentPoly::q_pow(r, 1);
        let r_u = self.get(u, sv);
        let r_su = self.get(su, sv);
        if group.is_left_descent(u, s) {
            let coeff = RationalFn::new(one_minus_q, [beta]);
            &(&coeff * r_u) + r_su
        } else {
            let num = &one_minus_q * &LaurentPoly::x_pow(&beta);
            let coeff = RationalFn::new(num, [beta]);
            &(&coeff * r_u) + &r_su.mul_poly(&LaurentPoly::q_pow(r, 1))
        }
    }
}

/// Classical R-polynomials `R_{u,v}(q)`, indexed `[u][v]`.
pub struct ClassicalR {
    order: usize,
    values: Vec<LaurentPoly>,
}

impl ClassicalR {
    /// `R_{u,v} = R_{su,sv}` if `su < u`, else `(q-1) R_{u,sv} + q R_{su,sv}`,
    /// for the smallest left descent `s` of `v`.
    pub fn build(group: &CoxeterGroup) -> Self {
        let n = group.order();
        let mut values = vec![LaurentPoly::zero(0); n * n];
        values[0] = LaurentPoly::one(0);
        let q = LaurentPoly::q_pow(0, 1);
        let q_minus_one = &q - &LaurentPoly::one(0);
        for v in group.elements().skip(1) {
            let s = group.left_descents(v).trailing_zeros() as usize;
            let sv = group.left_mul_gen(s, v);
            for u in group.elements() {
                let su = group.left_mul_gen(s, u);
                let r_su = &values[su.index() * n + sv.index()];
                let value = if group.is_left_descent(u, s) {
                    r_su.clone()
                } else {
                    let r_u = &values[u.index() * n + sv.index()];
                    &(&q_minus_one * r_u) + &(&q * r_su)
                };
                values[u.index() * n + v.index()] = value;
            }
        }
        ClassicalR { order: n, values }
    }

    pub fn get(&self, u: Element, v: Element) -> &LaurentPoly {
        &self.values[u.index() * self.order + v.index()]
    }
}

/// `S(u, v) = {α ∈ Φ⁺ : u ≤ v r_α < v}`, as indices into the positive roots.
pub fn s_set(group: &CoxeterGroup, u: Element, v: Element) -> Vec<usize> {
    (0..group.root_system().positive_roots().len())
        .filter(|&k| {
            let vr = group.mul(v, group.reflection(k));
            group.bruhat_leq(u, vr) && group.bruhat_lt(vr, v)
        })
        .collect()
}

/// `S(u, v, w) = S(U_{w^{-1}} ↓ u, v)`.
pub fn s_set3(demazure: &Demazure<'_>, u: Element, v: Element, w: Element) -> Vec<usize> {
    s_set(demazure.group(), demazure.v_min(u, w), v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CoxeterGroup {
        CoxeterGroup::new("A2".parse().unwrap()).unwrap()
    }

    #[test]
    fn r_examples() {
        let g = a2();
        let t = RTable::build(&g);
        for u in g.elements() {
            assert_eq!(t.get(u, u), &RationalFn::one(2));
            for v in g.elements() {
                if !g.bruhat_leq(u, v) {
                    assert!(t.get(u, v).is_zero());
                }
            }
        }
        // r_{e,s1} = (1-q) x1 / (1-x1)
        let a1 = Root::new(&[1, 0]);
        let num = LaurentPoly::from_terms(2, [(1, 0, vec![1, 0]), (-1, 1, vec![1, 0])]);
        let expected = RationalFn::new(num, [a1.clone()]);
        let r = t.get(g.identity(), g.generator(0));
        assert_eq!(r, &expected);
        assert_eq!(r.to_string(), "(x1 - q*x1) / (1 - x1)");
        let num_bar = LaurentPoly::from_terms(2, [(1, 0, vec![1, 0]), (-1, -1, vec![1, 0])]);
        assert_eq!(r.bar(), RationalFn::new(num_bar, [a1]));
        assert_eq!(RationalFn::one(2).bar(), RationalFn::one(2));
    }

    #[test]
    fn classical_examples() {
        let g = a2();
        let t = ClassicalR::build(&g);
        let q_minus_one = LaurentPoly::from_terms(0, [(1, 1, vec![]), (-1, 0, vec![])]);
        for u in g.elements() {
            assert!(t.get(u, u).is_one());
        }
        assert_eq!(t.get(g.identity(), g.generator(0)), &q_minus_one);
        assert_eq!(t.get(g.identity(), g.longest()).q_degree_range().unwrap().1, 3);
    }

    #[test]
    fn s_set_examples() {
        let g = a2();
        let d = Demazure::new(&g);
        assert_eq!(s_set(&g, g.identity(), g.generator(0)), vec![0]);
        for u in g.elements() {
            assert!(s_set(&g, u, u).is_empty());
        }
        assert_eq!(s_set(&g, g.identity(), g.longest()), vec![0, 1, 2]);
        for u in g.elements() {
            for v in g.elements() {
                assert_eq!(s_set3(&d, u, v, g.identity()), s_set(&g, u, v));
            }
            for w in g.elements() {
                assert!(s_set3(&d, u, d.v_min(u, w), w).is_empty());
            }
        }
        let s2 = g.generator(1);
        assert_eq!(s_set3(&d, g.identity(), s2, s2), vec![1]);
    }
}
