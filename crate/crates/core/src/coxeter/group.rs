use super::{CartanType, CoxeterError, RootSystem};
use crate::polyring::{LaurentPoly, Root};
use std::collections::HashMap;
use std::fmt;

/// Default cap on the number of group elements.
pub const DEFAULT_MAX_ORDER: usize = 50_000;

/// Orders up to this size get a full multiplication table.
const MUL_TABLE_MAX_ORDER: usize = 2048;

/// Handle to an element of a [`CoxeterGroup`].
///
/// Elements are numbered in breadth-first order from the identity, so index
/// order is compatible with length. Handles are only meaningful for the group
/// that produced them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(u32);

impl Element {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Self {
        Element(i as u32)
    }
}

/// A finite Weyl group with all tables needed for fast order queries.
pub struct CoxeterGroup {
    roots: RootSystem,
    /// Column-major images of the simple roots, `rank * rank` entries per element.
    images: Vec<i32>,
    length: Vec<u32>,
    left_gen: Vec<u32>,
    right_gen: Vec<u32>,
    left_desc: Vec<u32>,
    right_desc: Vec<u32>,
    inverse: Vec<u32>,
    words: Vec<Vec<u8>>,
    mul_table: Option<Vec<u32>>,
    reflections: Vec<Element>,
    /// Row `w` holds the bits `u` with `u ≤ w`.
    bruhat: Vec<u64>,
    row_words: usize,
}

impl CoxeterGroup {
    pub fn new(cartan_type: CartanType) -> Result<Self, CoxeterError> {
        Self::with_max_order(cartan_type, DEFAULT_MAX_ORDER)
    }

    pub fn with_max_order(cartan_type: CartanType, cap: usize) -> Result<Self, CoxeterError> {
        if cartan_type.expected_order() > cap as u128 || cartan_type.rank > 32 {
            return Err(CoxeterError::OrderCapExceeded { cap });
        }
        let roots = RootSystem::new(cartan_type);
        let r = roots.rank();
        let gens: Vec<Vec<Vec<i32>>> = (0..r).map(|i| roots.simple_reflection_matrix(i)).collect();

        let mut identity = vec![0i32; r * r];
        for i in 0..r {
            identity[i * r + i] = 1;
        }
        let mut index: HashMap<Vec<i32>, u32> = HashMap::new();
        index.insert(identity.clone(), 0);
        let mut images = identity;
        let mut length = vec![0u32];
        let mut parent: Vec<(u32, u8)> = vec![(0, 0)];
        let mut left_gen: Vec<u32> = Vec::new();

        // BFS over left multiplication by simple reflections.
        let mut head = 0usize;
        while head < length.len() {
            for (i, g) in gens.iter().enumerate() {
                let m = &images[head * r * r..(head + 1) * r * r];
                let prod = left_apply(g, m, r);
                let next = match index.get(&prod) {
                    Some(&k) => k,
                    None => {
                        let k = length.len() as u32;
                        if length.len() >= cap {
                            return Err(CoxeterError::OrderCapExceeded { cap });
                        }
                        images.extend_from_slice(&prod);
                        index.insert(prod, k);
                        length.push(length[head] + 1);
                        parent.push((head as u32, i as u8));
                        k
                    }
                };
                left_gen.push(next);
            }
            head += 1;
        }
        let n = length.len();

        let mut right_gen = vec![0u32; n * r];
        for w in 0..n {
            let m = &images[w * r * r..(w + 1) * r * r];
            for (i, g) in gens.iter().enumerate() {
                right_gen[w * r + i] = index[&right_apply(m, g, r)];
            }
        }

        let mut left_desc = vec![0u32; n];
        let mut right_desc = vec![0u32; n];
        for w in 0..n {
            for i in 0..r {
                if length[left_gen[w * r + i] as usize] < length[w] {
                    left_desc[w] |= 1 << i;
                }
                if length[right_gen[w * r + i] as usize] < length[w] {
                    right_desc[w] |= 1 << i;
                }
            }
        }

        // w = s_i p  ⇒  w^{-1} = p^{-1} s_i
        let mut inverse = vec![0u32; n];
        for w in 1..n {
            let (p, i) = parent[w];
            inverse[w] = right_gen[inverse[p as usize] as usize * r + i as usize];
        }

        // lexicographically smallest reduced word: peel the smallest left descent
        let mut words: Vec<Vec<u8>> = vec![Vec::new(); n];
        for w in 1..n {
            let i = left_desc[w].trailing_zeros() as usize;
            let rest = left_gen[w * r + i] as usize;
            let mut word = Vec::with_capacity(length[w] as usize);
            word.push(i as u8);
            word.extend_from_slice(&words[rest]);
            words[w] = word;
        }

        let mul_table = (n <= MUL_TABLE_MAX_ORDER).then(|| {
            let mut t = vec![0u32; n * n];
            for u in 0..n {
                t[u * n] = u as u32;
            }
            for v in 1..n {
                let (p, i) = parent[v];
                for u in 0..n {
                    let us = right_gen[u * r + i as usize] as usize;
                    t[u * n + v] = t[us * n + p as usize];
                }
            }
            t
        });

        let row_words = n.div_ceil(64);
        let mut bruhat = vec![0u64; n * row_words];
        bruhat[0] |= 1;
        for w in 1..n {
            let s = left_desc[w].trailing_zeros() as usize;
            let sw = left_gen[w * r + s] as usize;
            for u in 0..n {
                let su = left_gen[u * r + s] as usize;
                let probe = if length[su] < length[u] { su } else { u };
                if bruhat[sw * row_words + probe / 64] >> (probe % 64) & 1 == 1 {
                    bruhat[w * row_words + u / 64] |= 1 << (u % 64);
                }
            }
        }

        let mut group = CoxeterGroup {
            roots,
            images,
            length,
            left_gen,
            right_gen,
            left_desc,
            right_desc,
            inverse,
            words,
            mul_table,
            reflections: Vec::new(),
            bruhat,
            row_words,
        };
        group.reflections = group.compute_reflections();
        Ok(group)
    }

    fn compute_reflections(&self) -> Vec<Element> {
        let r = self.rank();
        let mut out: Vec<Option<Element>> = vec![None; self.roots.positive_roots().len()];
        let mut missing = out.len();
        for w in self.elements() {
            for i in 0..r {
                let img = self.apply_to_root(w, &Root::simple(r, i));
                if let Some(k) = self.roots.root_index(&img) {
                    if out[k].is_none() {
                        let ws = self.mul(w, self.generator(i));
                        out[k] = Some(self.mul(ws, self.inv(w)));
                        missing -= 1;
                    }
                }
            }
            if missing == 0 {
                break;
            }
        }
        out.into_iter().map(|e| e.expect("every root is conjugate to a simple root")).collect()
    }

    pub fn cartan_type(&self) -> CartanType {
        self.roots.cartan_type()
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.roots
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    pub fn order(&self) -> usize {
        self.length.len()
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Element> + ExactSizeIterator {
        (0..self.order() as u32).map(Element)
    }

    pub fn identity(&self) -> Element {
        Element(0)
    }

    pub fn longest(&self) -> Element {
        Element(self.order() as u32 - 1)
    }

    /// The simple reflection `s_{i+1}` (generators are 0-based).
    pub fn generator(&self, i: usize) -> Element {
        Element(self.left_gen[i])
    }

    pub fn length(&self, w: Element) -> usize {
        self.length[w.index()] as usize
    }

    /// Number of elements of each length, starting at length 0.
    pub fn length_histogram(&self) -> Vec<usize> {
        let max = self.length(self.longest());
        let mut h = vec![0; max + 1];
        for &l in &self.length {
            h[l as usize] += 1;
        }
        h
    }

    /// `s_i w`.
    pub fn left_mul_gen(&self, i: usize, w: Element) -> Element {
        Element(self.left_gen[w.index() * self.rank() + i])
    }

    /// `w s_i`.
    pub fn right_mul_gen(&self, w: Element, i: usize) -> Element {
        Element(self.right_gen[w.index() * self.rank() + i])
    }

    /// Bitmask of the `i` with `s_i w < w`.
    pub fn left_descents(&self, w: Element) -> u32 {
        self.left_desc[w.index()]
    }

    /// Bitmask of the `i` with `w s_i < w`.
    pub fn right_descents(&self, w: Element) -> u32 {
        self.right_desc[w.index()]
    }

    pub fn is_left_descent(&self, w: Element, i: usize) -> bool {
        self.left_desc[w.index()] >> i & 1 == 1
    }

    pub fn is_right_descent(&self, w: Element, i: usize) -> bool {
        self.right_desc[w.index()] >> i & 1 == 1
    }

    pub fn inv(&self, w: Element) -> Element {
        Element(self.inverse[w.index()])
    }

    pub fn mul(&self, u: Element, v: Element) -> Element {
        match &self.mul_table {
            Some(t) => Element(t[u.index() * self.order() + v.index()]),
            None => self.reduced_word(v).iter().fold(u, |acc, &i| self.right_mul_gen(acc, i)),
        }
    }

    /// The lexicographically smallest reduced word (0-based generator indices).
    pub fn reduced_word(&self, w: Element) -> Vec<usize> {
        self.words[w.index()].iter().map(|&i| i as usize).collect()
    }

    /// Product of the generators in `word` (0-based), reduced or not.
    pub fn from_word(&self, word: &[usize]) -> Element {
        word.iter().fold(self.identity(), |acc, &i| self.right_mul_gen(acc, i))
    }

    /// Strong Bruhat order `u ≤ w`.
    pub fn bruhat_leq(&self, u: Element, w: Element) -> bool {
        let u = u.index();
        self.bruhat[w.index() * self.row_words + u / 64] >> (u % 64) & 1 == 1
    }

    pub fn bruhat_lt(&self, u: Element, w: Element) -> bool {
        u != w && self.bruhat_leq(u, w)
    }

    /// Right weak order: `ℓ(u) + ℓ(u^{-1} w) = ℓ(w)`.
    pub fn weak_leq_right(&self, u: Element, w: Element) -> bool {
        self.length(u) + self.length(self.mul(self.inv(u), w)) == self.length(w)
    }

    /// Left weak order: `ℓ(u) + ℓ(w u^{-1}) = ℓ(w)`.
    pub fn weak_leq_left(&self, u: Element, w: Element) -> bool {
        self.length(u) + self.length(self.mul(w, self.inv(u))) == self.length(w)
    }

    /// The Bruhat interval `[u, w]`, in index order; empty unless `u ≤ w`.
    pub fn interval(&self, u: Element, w: Element) -> Vec<Element> {
        if !self.bruhat_leq(u, w) {
            return Vec::new();
        }
        self.elements()
            .filter(|&x| self.bruhat_leq(u, x) && self.bruhat_leq(x, w))
            .collect()
    }

    /// `Σ_{x ∈ [u,w]} q^{ℓ(x)}`.
    pub fn poincare(&self, u: Element, w: Element) -> LaurentPoly {
        let mut p = LaurentPoly::zero(0);
        for x in self.interval(u, w) {
            p += &LaurentPoly::q_pow(0, self.length(x) as i32);
        }
        p
    }

    /// Image of a root (given in simple-root coordinates) under `w`.
    pub fn apply_to_root(&self, w: Element, beta: &Root) -> Root {
        let r = self.rank();
        let m = &self.images[w.index() * r * r..(w.index() + 1) * r * r];
        let mut out = Root(smallvec::smallvec![0; r]);
        for (j, &c) in beta.coords().iter().enumerate() {
            if c != 0 {
                for k in 0..r {
                    out.0[k] += c * m[j * r + k];
                }
            }
        }
        out
    }

    /// Image of the `k`-th positive root under `w`, with its sign.
    pub fn root_action(&self, w: Element, k: usize) -> Root {
        self.apply_to_root(w, &self.roots.positive_roots()[k])
    }

    /// The reflection `r_β` for the `k`-th positive root.
    pub fn reflection(&self, k: usize) -> Element {
        self.reflections[k]
    }

    /// Parses `e`, a digit string like `121`, or a comma list like `1,2,1`.
    /// The word need not be reduced.
    pub fn parse_element(&self, text: &str) -> Result<Element, CoxeterError> {
        let text = text.trim();
        let bad = |reason: &str| CoxeterError::MalformedWord {
            word: text.to_string(),
            reason: reason.to_string(),
        };
        if text == "e" {
            return Ok(self.identity());
        }
        if text.is_empty() {
            return Err(bad("empty word"));
        }
        let letters: Vec<&str> = if text.contains(',') {
            text.split(',').map(str::trim).collect()
        } else {
            text.char_indices().map(|(i, c)| &text[i..i + c.len_utf8()]).collect()
        };
        let mut word = Vec::with_capacity(letters.len());
        for l in letters {
            let i: usize = l.parse().map_err(|_| bad("expected generator indices"))?;
            if i == 0 || i > self.rank() {
                return Err(bad(&format!("generator index must be in 1..={}", self.rank())));
            }
            word.push(i - 1);
        }
        Ok(self.from_word(&word))
    }

    /// Canonical text form: `e`, or the lex-smallest reduced word as digits
    /// (comma-separated when the rank exceeds 9).
    pub fn format_element(&self, w: Element) -> String {
        let word = &self.words[w.index()];
        if word.is_empty() {
            return "e".to_string();
        }
        let letters: Vec<String> = word.iter().map(|&i| (i + 1).to_string()).collect();
        if self.rank() > 9 {
            letters.join(",")
        } else {
            letters.concat()
        }
    }

    pub fn display(&self, w: Element) -> DisplayElement<'_> {
        DisplayElement { group: self, w }
    }
}

pub struct DisplayElement<'a> {
    group: &'a CoxeterGroup,
    w: Element,
}

impl fmt::Display for DisplayElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.group.format_element(self.w))
    }
}

impl fmt::Debug for CoxeterGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterGroup")
            .field("type", &self.cartan_type())
            .field("order", &self.order())
            .finish()
    }
}

/// `g · m` for column-major `m`.
fn left_apply(g: &[Vec<i32>], m: &[i32], r: usize) -> Vec<i32> {
    let mut out = vec![0; r * r];
    for j in 0..r {
        for k in 0..r {
            out[j * r + k] = (0..r).map(|l| g[k][l] * m[j * r + l]).sum();
        }
    }
    out
}

/// `m · g` for column-major `m`.
fn right_apply(m: &[i32], g: &[Vec<i32>], r: usize) -> Vec<i32> {
    let mut out = vec![0; r * r];
    for j in 0..r {
        for k in 0..r {
            out[j * r + k] = (0..r).map(|l| m[l * r + k] * g[l][j]).sum();
        }
    }
    out
}
