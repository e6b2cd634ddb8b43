//! The 0-Hecke (Demazure) monoid acting on a Weyl group.
//!
//! `U_i ↑ v` moves `v` up to `s_i v` when that is longer, `U_i ↓ v` moves it
//! down to `s_i v` when that is shorter; the right actions `v ↑ U_i`,
//! `v ↓ U_i` do the same with `v s_i`. A general `U_w` acts by folding a
//! reduced word of `w` through the one-step maps. The Demazure product is
//! `u ∘ v = u ↑ U_v`.

use crate::coxeter::{CoxeterGroup, Element};
use std::sync::OnceLock;

pub struct Demazure<'g> {
    group: &'g CoxeterGroup,
    circ_table: OnceLock<Vec<u32>>,
}

impl<'g> Demazure<'g> {
    pub fn new(group: &'g CoxeterGroup) -> Self {
        Demazure {
            group,
            circ_table: OnceLock::new(),
        }
    }

    pub fn group(&self) -> &'g CoxeterGroup {
        self.group
    }

    /// `U_i ↑ x`
    pub fn up_left_step(&self, i: usize, x: Element) -> Element {
        if self.group.is_left_descent(x, i) {
            x
        } else {
            self.group.left_mul_gen(i, x)
        }
    }

    /// `U_i ↓ x`
    pub fn down_left_step(&self, i: usize, x: Element) -> Element {
        if self.group.is_left_descent(x, i) {
            self.group.left_mul_gen(i, x)
        } else {
            x
        }
    }

    /// `x ↑ U_i`
    pub fn up_right_step(&self, x: Element, i: usize) -> Element {
        if self.group.is_right_descent(x, i) {
            x
        } else {
            self.group.right_mul_gen(x, i)
        }
    }

    /// `x ↓ U_i`
    pub fn down_right_step(&self, x: Element, i: usize) -> Element {
        if self.group.is_right_descent(x, i) {
            self.group.right_mul_gen(x, i)
        } else {
            x
        }
    }

    /// `U_{i1} ⋯ U_{ik} ↑ x` for an arbitrary word; the rightmost letter acts first.
    pub fn up_left_word(&self, word: &[usize], x: Element) -> Element {
        word.iter().rev().fold(x, |acc, &i| self.up_left_step(i, acc))
    }

    /// `U_{i1} ⋯ U_{ik} ↓ x`
    pub fn down_left_word(&self, word: &[usize], x: Element) -> Element {
        word.iter().rev().fold(x, |acc, &i| self.down_left_step(i, acc))
    }

    /// `x ↑ U_{i1} ⋯ U_{ik}`; the leftmost letter acts first.
    pub fn up_right_word(&self, x: Element, word: &[usize]) -> Element {
        word.iter().fold(x, |acc, &i| self.up_right_step(acc, i))
    }

    /// `x ↓ U_{i1} ⋯ U_{ik}`
    pub fn down_right_word(&self, x: Element, word: &[usize]) -> Element {
        word.iter().fold(x, |acc, &i| self.down_right_step(acc, i))
    }

    /// `U_w ↑ x`
    pub fn up_left(&self, w: Element, x: Element) -> Element {
        self.up_left_word(&self.group.reduced_word(w), x)
    }

    /// `U_w ↓ x`
    pub fn down_left(&self, w: Element, x: Element) -> Element {
        self.down_left_word(&self.group.reduced_word(w), x)
    }

    /// `x ↑ U_w`
    pub fn up_right(&self, x: Element, w: Element) -> Element {
        self.up_right_word(x, &self.group.reduced_word(w))
    }

    /// `x ↓ U_w`
    pub fn down_right(&self, x: Element, w: Element) -> Element {
        self.down_right_word(x, &self.group.reduced_word(w))
    }

    /// Demazure product `u ∘ v`. Uses the product table once it has been
    /// materialized by [`Demazure::materialize`].
    pub fn circ(&self, u: Element, v: Element) -> Element {
        match self.circ_table.get() {
            Some(t) => Element::from_index(t[u.index() * self.group.order() + v.index()] as usize),
            None => self.up_right(u, v),
        }
    }

    /// `s_{i1} ∘ ⋯ ∘ s_{im}`
    pub fn circ_word(&self, word: &[usize]) -> Element {
        self.up_right_word(self.group.identity(), word)
    }

    /// Builds the full `∘` table. Idempotent; later calls are free.
    pub fn materialize(&self) {
        self.circ_table.get_or_init(|| {
            let g = self.group;
            let mut t = Vec::with_capacity(g.order() * g.order());
            for u in g.elements() {
                for v in g.elements() {
                    t.push(self.up_right(u, v).index() as u32);
                }
            }
            t
        });
    }

    /// The mixed meet `m = u (u^{-1} ↓ U_w)`: the Bruhat-largest `m` with
    /// `m ≤_R u` and `m ≤ w`.
    pub fn mixed_meet(&self, u: Element, w: Element) -> Element {
        let g = self.group;
        g.mul(u, self.down_right(g.inv(u), w))
    }

    /// `v_min(u, w) = U_{w^{-1}} ↓ u`, the smallest `v` with `σ(u,v,w) ≠ 0`.
    pub fn v_min(&self, u: Element, w: Element) -> Element {
        self.down_left(self.group.inv(w), u)
    }
}
