//! The matrix coefficients `σ(u,v,w)`, their minimal values `σ₀(u,w)`, the
//! GK-type test and full classification of triples.
//!
//! `σ(u,v,w) = Σ_{x ≥ u, y ≤ v} q^{-ℓ(y)} Θ(x,y,w) r̄_{y,v}(z)`, evaluated as
//! `Σ_y C(u,y,w) · q^{-ℓ(y)} r̄_{y,v}` with `C(u,y,w) = Σ_{x ≥ u} Θ(x,y,w)`.
//! For each `v` the terms `q^{-ℓ(y)} r̄_{y,v}` are kept over one common
//! denominator, so a σ value costs one polynomial sum and one reduction.

use crate::coxeter::{CartanType, CoxeterGroup, Element};
use crate::demazure::Demazure;
use crate::hecke::{Hecke, HeckeElem, ThetaTable};
use crate::polyring::{LaurentPoly, RationalFn, Root};
use crate::rpoly::{s_set, RTable};
use crate::suites::Verification;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Largest group order `classify` accepts unless told otherwise.
pub const DEFAULT_CLASSIFY_MAX_ORDER: usize = 48;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SigmaError {
    #[error("({u}, {v}, {w}) has v below v_min = {v_min}, so σ vanishes and GK type is undefined")]
    BelowVMin {
        u: String,
        v: String,
        w: String,
        v_min: String,
    },
    #[error("σ₀({u}, {w}) = {value} still depends on the torus variables")]
    TorusDependence { u: String, w: String, value: String },
    #[error("group order {order} exceeds the classification cap of {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("failed to build worker pool: {0}")]
    ThreadPool(String),
}

/// The terms `q^{-ℓ(y)} r̄_{y,v}` for one `v`, over a shared denominator.
struct BarColumn {
    den: Vec<Root>,
    nums: Vec<(Element, LaurentPoly)>,
}

pub struct SigmaEngine<'g> {
    group: &'g CoxeterGroup,
    demazure: Demazure<'g>,
    theta: ThetaTable,
    rtable: RTable,
    columns: Vec<BarColumn>,
}

impl<'g> SigmaEngine<'g> {
    pub fn new(group: &'g CoxeterGroup) -> Self {
        let rtable = RTable::build(group);
        Self::with_rtable(group, rtable)
    }

    /// Uses a precomputed (e.g. cached) table of r-polynomials.
    pub fn with_rtable(group: &'g CoxeterGroup, rtable: RTable) -> Self {
        let theta = ThetaTable::build(group);
        let columns = group.elements().map(|v| bar_column(group, &rtable, v)).collect();
        SigmaEngine {
            group,
            demazure: Demazure::new(group),
            theta,
            rtable,
            columns,
        }
    }

    pub fn group(&self) -> &'g CoxeterGroup {
        self.group
    }

    pub fn demazure(&self) -> &Demazure<'g> {
        &self.demazure
    }

    pub fn theta_table(&self) -> &ThetaTable {
        &self.theta
    }

    pub fn rtable(&self) -> &RTable {
        &self.rtable
    }

    fn arity(&self) -> usize {
        self.group.rank()
    }

    /// `C(u,y,w) = Σ_{x ≥ u} Θ(x,y,w)` for every `y`, in the torus ring.
    fn partial_theta_sums(&self, u: Element, w: Element) -> Vec<LaurentPoly> {
        let g = self.group;
        let above: Vec<Element> = g.elements().filter(|&x| g.bruhat_leq(u, x)).collect();
        g.elements()
            .map(|y| {
                let mut c = LaurentPoly::zero(0);
                for &x in &above {
                    c += self.theta.get(x, y, w);
                }
                c.with_arity(self.arity()).expect("Θ is a polynomial in q")
            })
            .collect()
    }

    fn sigma_from_sums(&self, sums: &[LaurentPoly], v: Element) -> RationalFn {
        let column = &self.columns[v.index()];
        let mut num = LaurentPoly::zero(self.arity());
        for (y, term) in &column.nums {
            let c = &sums[y.index()];
            if !c.is_zero() {
                num += &(c * term);
            }
        }
        RationalFn::new(num, column.den.iter().cloned())
    }

    /// `σ(u, v, w)`, always evaluated from the full double sum.
    pub fn sigma(&self, u: Element, v: Element, w: Element) -> RationalFn {
        self.sigma_from_sums(&self.partial_theta_sums(u, w), v)
    }

    pub fn v_min(&self, u: Element, w: Element) -> Element {
        self.demazure.v_min(u, w)
    }

    /// `σ₀(u, w) = σ(u, v_min(u,w), w)` as a polynomial in `q` alone.
    pub fn sigma0(&self, u: Element, w: Element) -> Result<LaurentPoly, SigmaError> {
        let v = self.v_min(u, w);
        let value = self.sigma(u, v, w);
        self.expect_x_free(u, w, &value)
    }

    fn expect_x_free(&self, u: Element, w: Element, value: &RationalFn) -> Result<LaurentPoly, SigmaError> {
        match value.as_laurent_poly() {
            Some(p) if p.is_x_free() => Ok(p.with_arity(0).expect("x-free")),
            _ => Err(SigmaError::TorusDependence {
                u: self.group.format_element(u),
                w: self.group.format_element(w),
                value: value.to_string(),
            }),
        }
    }

    /// `Π_{α ∈ S(u,v,w)} (1 - q^{-1} z^α) / (1 - z^α)`.
    pub fn gk_product(&self, u: Element, v: Element, w: Element) -> RationalFn {
        let roots = self.group.root_system().positive_roots();
        s_set(self.group, self.v_min(u, w), v)
            .into_iter()
            .fold(RationalFn::one(self.arity()), |acc, k| {
                &acc * &RationalFn::gk_factor(&roots[k])
            })
    }

    /// Whether `σ(u,v,w) = σ₀(u,w) Π_{α ∈ S(u,v,w)} (1 - q^{-1} z^α)/(1 - z^α)`.
    /// Only defined for `v ≥ v_min(u, w)`.
    pub fn is_gk(&self, u: Element, v: Element, w: Element) -> Result<bool, SigmaError> {
        let v_min = self.v_min(u, w);
        if !self.group.bruhat_leq(v_min, v) {
            let f = |x| self.group.format_element(x);
            return Err(SigmaError::BelowVMin {
                u: f(u),
                v: f(v),
                w: f(w),
                v_min: f(v_min),
            });
        }
        let sigma0 = self.sigma0(u, w)?;
        Ok(self.matches_gk(&self.sigma(u, v, w), &sigma0, u, v, w))
    }

    fn matches_gk(&self, sigma: &RationalFn, sigma0: &LaurentPoly, u: Element, v: Element, w: Element) -> bool {
        let lifted = sigma0.with_arity(self.arity()).expect("x-free");
        let expected = self.gk_product(u, v, w).mul_poly(&lifted);
        sigma == &expected
    }

    /// `μ(v) = Σ_{y ≤ v} q^{-ℓ(y)} r̄_{y,v} T_{y^{-1}}`, keyed by `y^{-1}`.
    pub fn mu_element(&self, v: Element) -> BTreeMap<Element, RationalFn> {
        let g = self.group;
        let arity = self.arity();
        let mut out = BTreeMap::new();
        for y in g.elements() {
            let r = self.rtable.get(y, v);
            if r.is_zero() {
                continue;
            }
            let coeff = r.bar().mul_poly(&LaurentPoly::q_pow(arity, -(g.length(y) as i32)));
            out.insert(g.inv(y), coeff);
        }
        out
    }

    /// Cross-check route: `Σ_{x ≥ u} Λ_w(T_x μ(v))`, multiplying in the Hecke
    /// algebra directly instead of reading the Θ table.
    pub fn sigma_via_mu(&self, u: Element, v: Element, w: Element) -> RationalFn {
        let g = self.group;
        let hecke = Hecke::new(g);
        let mu = self.mu_element(v);
        let mut total = RationalFn::zero(self.arity());
        for x in g.elements().filter(|&x| g.bruhat_leq(u, x)) {
            let tx = HeckeElem::basis(x);
            for (&y_inv, coeff) in &mu {
                let lam = hecke.lambda(w, &hecke.mul_basis_right(&tx, y_inv));
                if lam.is_zero() {
                    continue;
                }
                let lam = lam.with_arity(self.arity()).expect("Λ_w is a polynomial in q");
                total = &total + &coeff.mul_poly(&lam);
            }
        }
        total
    }

    /// Classifies every triple of the group. The result does not depend on
    /// `jobs`.
    pub fn classify(&self, jobs: usize, max_order: usize) -> Result<ClassificationReport, SigmaError> {
        let g = self.group;
        if g.order() > max_order {
            return Err(SigmaError::CapExceeded {
                order: g.order(),
                cap: max_order,
            });
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| SigmaError::ThreadPool(e.to_string()))?;
        let pairs: Vec<(Element, Element)> = g
            .elements()
            .flat_map(|u| g.elements().map(move |w| (u, w)))
            .collect();
        let per_pair: Vec<Result<Vec<TripleRecord>, SigmaError>> =
            pool.install(|| pairs.par_iter().map(|&(u, w)| self.classify_pair(u, w)).collect());
        let mut rows = Vec::new();
        for r in per_pair {
            rows.extend(r?);
        }
        rows.sort_by(|a, b| a.key().cmp(&b.key()));
        let n = g.order();
        let gk_count = rows.iter().filter(|r| r.is_gk).count();
        let exceptions = rows
            .iter()
            .filter(|r| !r.is_gk)
            .map(|r| TripleWords {
                u: r.u.clone(),
                v: r.v.clone(),
                w: r.w.clone(),
            })
            .collect();
        let unexpected_zeros = rows
            .iter()
            .filter(|r| r.sigma_is_zero)
            .map(|r| TripleWords {
                u: r.u.clone(),
                v: r.v.clone(),
                w: r.w.clone(),
            })
            .collect();
        Ok(ClassificationReport {
            cartan_type: g.cartan_type(),
            total_triples: n * n * n,
            nonzero_count: rows.len(),
            gk_count,
            exceptions,
            unexpected_zeros,
            rows,
        })
    }

    fn classify_pair(&self, u: Element, w: Element) -> Result<Vec<TripleRecord>, SigmaError> {
        let g = self.group;
        let v_min = self.v_min(u, w);
        let sums = self.partial_theta_sums(u, w);
        let sigma0 = self.expect_x_free(u, w, &self.sigma_from_sums(&sums, v_min))?;
        let sigma0_text = sigma0.to_string();
        let mut out = Vec::new();
        for v in g.elements().filter(|&v| g.bruhat_leq(v_min, v)) {
            let sigma = self.sigma_from_sums(&sums, v);
            out.push(TripleRecord {
                u: g.format_element(u),
                v: g.format_element(v),
                w: g.format_element(w),
                is_gk: self.matches_gk(&sigma, &sigma0, u, v, w),
                sigma_is_zero: sigma.is_zero(),
                sigma0: sigma0_text.clone(),
            });
        }
        Ok(out)
    }

    /// Checks `σ(u, v_min, w) = q^{-ℓ(v_min)} Σ_{z ∈ [u, w v_min]} q^{ℓ(z)}`
    /// with no torus dependence, for every pair `(u, w)`.
    pub fn verify_main_theorem(&self) -> Verification {
        let g = self.group;
        let mut report = Verification::new("main-theorem");
        for u in g.elements() {
            for w in g.elements() {
                report.checked += 1;
                let v = self.v_min(u, w);
                let expected = g.poincare(u, g.mul(w, v)).shift_q(-(g.length(v) as i32));
                match self.sigma0(u, w) {
                    Ok(p) if p == expected => {}
                    Ok(p) => report.fail(format!(
                        "u={} w={}: σ₀ = {p}, expected {expected}",
                        g.format_element(u),
                        g.format_element(w)
                    )),
                    Err(e) => report.fail(e.to_string()),
                }
            }
        }
        report
    }

    /// Checks `σ(u,v,w) = 0` for triples with `v ≱ v_min(u,w)`: all of them
    /// when `|W| ≤ 10`, otherwise `sample_size` drawn without replacement.
    pub fn verify_vanishing(&self, sample_size: usize, seed: u64) -> Verification {
        let g = self.group;
        let mut report = Verification::new("vanishing");
        let mut candidates = Vec::new();
        for u in g.elements() {
            for w in g.elements() {
                let v_min = self.v_min(u, w);
                for v in g.elements().filter(|&v| !g.bruhat_leq(v_min, v)) {
                    candidates.push((u, v, w));
                }
            }
        }
        if g.order() > 10 && candidates.len() > sample_size {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            candidates.shuffle(&mut rng);
            candidates.truncate(sample_size);
        }
        for (u, v, w) in candidates {
            report.checked += 1;
            let s = self.sigma(u, v, w);
            if !s.is_zero() {
                report.fail(format!(
                    "σ({}, {}, {}) = {s}",
                    g.format_element(u),
                    g.format_element(v),
                    g.format_element(w)
                ));
            }
        }
        report
    }
}

fn bar_column(group: &CoxeterGroup, rtable: &RTable, v: Element) -> BarColumn {
    let arity = group.rank();
    let entries: Vec<(Element, &RationalFn)> = group
        .elements()
        .map(|y| (y, rtable.get(y, v)))
        .filter(|(_, r)| !r.is_zero())
        .collect();
    let mut common: BTreeMap<Root, u32> = BTreeMap::new();
    for (_, r) in &entries {
        for (beta, &m) in r.denominator() {
            let e = common.entry(beta.clone()).or_insert(0);
            *e = (*e).max(m);
        }
    }
    let nums = entries
        .into_iter()
        .map(|(y, r)| {
            let mut num = r.numerator().bar_q().shift_q(-(group.length(y) as i32));
            for (beta, &m) in &common {
                let have = r.denominator().get(beta).copied().unwrap_or(0);
                for _ in have..m {
                    num = num.mul_binomial(beta);
                }
            }
            debug_assert_eq!(num.arity(), arity);
            (y, num)
        })
        .collect();
    let den = common
        .into_iter()
        .flat_map(|(beta, m)| std::iter::repeat_n(beta, m as usize))
        .collect();
    BarColumn { den, nums }
}

/// Canonical words of a triple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TripleWords {
    pub u: String,
    pub v: String,
    pub w: String,
}

/// One triple with `v ≥ v_min(u, w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleRecord {
    pub u: String,
    pub v: String,
    pub w: String,
    pub is_gk: bool,
    pub sigma_is_zero: bool,
    pub sigma0: String,
}

impl TripleRecord {
    fn key(&self) -> (&str, &str, &str) {
        (&self.u, &self.v, &self.w)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub cartan_type: CartanType,
    pub total_triples: usize,
    /// Triples with `v ≥ v_min(u, w)`.
    pub nonzero_count: usize,
    pub gk_count: usize,
    /// Non-GK triples, sorted by their canonical words.
    pub exceptions: Vec<TripleWords>,
    /// Triples above `v_min` whose σ nonetheless vanished; expected empty.
    pub unexpected_zeros: Vec<TripleWords>,
    /// Every triple counted in `nonzero_count`, sorted by canonical words.
    pub rows: Vec<TripleRecord>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CoxeterGroup {
        CoxeterGroup::new("A2".parse().unwrap()).unwrap()
    }

    fn qpoly(terms: &[(i64, i32)]) -> LaurentPoly {
        LaurentPoly::from_terms(0, terms.iter().map(|&(c, k)| (c, k, vec![])))
    }

    #[test]
    fn sigma_examples() {
        let g = a2();
        let engine = SigmaEngine::new(&g);
        let p = |s: &str| g.parse_element(s).unwrap();
        let e = g.identity();
        let s = engine.sigma(e, p("1"), e);
        assert_eq!(s, RationalFn::gk_factor(&Root::new(&[1, 0])));
        assert_eq!(s.to_string(), "(1 - q^-1*x1) / (1 - x1)");
        let s = engine.sigma(p("1"), e, p("21"));
        assert_eq!(s.as_laurent_poly(), Some(&qpoly(&[(1, 1), (1, 2)]).with_arity(2).unwrap()));
        assert!(engine.sigma(p("12"), e, e).is_zero());
    }

    #[test]
    fn sigma0_examples() {
        let g = a2();
        let engine = SigmaEngine::new(&g);
        let p = |s: &str| g.parse_element(s).unwrap();
        assert_eq!(engine.sigma0(p("1"), p("2")).unwrap(), qpoly(&[(1, 0), (1, 1)]));
        for u in g.elements() {
            assert_eq!(engine.sigma0(u, g.longest()).unwrap(), g.poincare(u, g.longest()));
        }
        assert_eq!(engine.sigma0(p("12"), g.longest()).unwrap(), qpoly(&[(1, 2), (1, 3)]));
    }

    #[test]
    fn mu_examples() {
        let g = a2();
        let engine = SigmaEngine::new(&g);
        let mu = engine.mu_element(g.identity());
        assert_eq!(mu.len(), 1);
        assert_eq!(mu[&g.identity()], RationalFn::one(2));
        let s1 = g.generator(0);
        let mu = engine.mu_element(s1);
        assert_eq!(mu.len(), 2);
        let num = LaurentPoly::from_terms(2, [(1, 0, vec![1, 0]), (-1, -1, vec![1, 0])]);
        assert_eq!(mu[&g.identity()], RationalFn::new(num, [Root::new(&[1, 0])]));
        assert_eq!(mu[&s1], RationalFn::from_poly(LaurentPoly::q_pow(2, -1)));
    }

    #[test]
    fn gk_examples() {
        let g = a2();
        let engine = SigmaEngine::new(&g);
        let p = |s: &str| g.parse_element(s).unwrap();
        for u in g.elements() {
            for w in g.elements() {
                assert_eq!(engine.is_gk(u, engine.v_min(u, w), w), Ok(true));
            }
        }
        assert_eq!(engine.is_gk(p("1"), p("1"), p("12")), Ok(false));
        for v in g.elements() {
            assert_eq!(engine.is_gk(g.identity(), v, g.identity()), Ok(true));
        }
        assert!(matches!(
            engine.is_gk(p("12"), g.identity(), g.identity()),
            Err(SigmaError::BelowVMin { .. })
        ));
    }

    #[test]
    fn classify_cap() {
        let g = CoxeterGroup::new("A3".parse().unwrap()).unwrap();
        let engine = SigmaEngine::new(&g);
        assert_eq!(
            engine.classify(1, 10).unwrap_err(),
            SigmaError::CapExceeded { order: 24, cap: 10 }
        );
    }
}
