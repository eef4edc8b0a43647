//! Graded non-symmetric operads with multiplication.
//!
//! An operad is described by a basis of each component `O(p)` together with
//! integer structure constants for the partial compositions `∘_i` on basis
//! monomials. Elements are finite linear combinations with coefficients in any
//! [`Scalar`]. The multiplication `μ_k` turns the operad into a cosimplicial
//! object:
//!
//! * `d^0(x) = μ_2 ∘_2 x`, `d^i(x) = x ∘_i μ_2` for `1 ≤ i ≤ p`, `d^{p+1}(x) = μ_2 ∘_1 x`
//! * `s^i(x) = x ∘_{i+1} e` with `e = μ_0`.

use std::collections::BTreeMap;
use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{arg, Result};
use crate::scalar::Scalar;

/// Identifies an operad instance so that elements of different operads are
/// never combined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OperadKey(pub u64);

pub trait MultiplicativeOperad: Send + Sync {
    type Monomial: Clone + Ord + Hash + Debug + Display + Send + Sync;

    fn key(&self) -> OperadKey;

    /// Human readable name, e.g. `pois5`.
    fn name(&self) -> String;

    /// Internal degrees are multiples of this step.
    fn degree_step(&self) -> usize;

    /// All basis monomials of `O(arity)`, deterministically ordered.
    fn basis(&self, arity: usize) -> Vec<Self::Monomial>;

    fn basis_in_degree(&self, arity: usize, degree: usize) -> Vec<Self::Monomial> {
        self.basis(arity)
            .into_iter()
            .filter(|m| self.degree(m) == degree)
            .collect()
    }

    fn arity(&self, m: &Self::Monomial) -> usize;

    fn degree(&self, m: &Self::Monomial) -> usize;

    /// `x ∘_i y` on basis monomials, with integer coefficients.
    /// Slots are 1-based; callers guarantee `1 ≤ i ≤ arity(x)`.
    fn compose_basis(
        &self,
        x: &Self::Monomial,
        i: usize,
        y: &Self::Monomial,
    ) -> Vec<(Self::Monomial, i64)>;

    fn identity(&self) -> Self::Monomial;

    /// The multiplication `μ_k`; `μ_0` is the unit `e`.
    fn mu(&self, k: usize) -> Self::Monomial;

    fn parse_monomial(&self, s: &str) -> Result<Self::Monomial>;

    /// True when the normalized component at `(arity, degree)` is known to
    /// vanish without enumerating it.
    fn normalized_is_empty(&self, _arity: usize, _degree: usize) -> bool {
        false
    }

    /// Basis of `⋂ ker s^i` at `(arity, degree)`. The default keeps the
    /// monomials killed by every codegeneracy, which is a basis whenever the
    /// codegeneracies send distinct surviving monomials to distinct monomials.
    fn normalized_basis(&self, arity: usize, degree: usize) -> Vec<Self::Monomial> {
        if self.normalized_is_empty(arity, degree) {
            return Vec::new();
        }
        let e = self.mu(0);
        self.basis_in_degree(arity, degree)
            .into_iter()
            .filter(|m| (1..=arity).all(|i| self.compose_basis(m, i, &e).is_empty()))
            .collect()
    }
}

/// A homogeneous-in-arity linear combination of basis monomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element<M: Ord, F> {
    key: OperadKey,
    arity: usize,
    terms: BTreeMap<M, F>,
}

impl<M, F> Element<M, F>
where
    M: Clone + Ord + Display,
    F: Scalar,
{
    pub fn zero(key: OperadKey, arity: usize) -> Self {
        Element {
            key,
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        key: OperadKey,
        arity: usize,
        terms: impl IntoIterator<Item = (M, F)>,
    ) -> Self {
        let mut e = Self::zero(key, arity);
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn key(&self) -> OperadKey {
        self.key
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<M, F> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &M) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    fn add_term(&mut self, m: M, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.key != other.key {
            return arg("elements belong to different operads");
        }
        if self.arity != other.arity {
            return arg(format!("arity mismatch: {} vs {}", self.arity, other.arity));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-F::one()))
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.key, self.arity);
        }
        Element {
            key: self.key,
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    /// Accumulate `c · other` into `self`.
    pub fn axpy(&mut self, c: &F, other: &Self) -> Result<()> {
        self.check_compatible(other)?;
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v.clone() * c.clone());
        }
        Ok(())
    }

    /// Coefficient vector against an ordered basis. Fails if a term falls
    /// outside the basis.
    pub fn coordinates(&self, index: &BTreeMap<M, usize>, dim: usize) -> Result<Vec<F>> {
        let mut v = vec![F::zero(); dim];
        for (m, c) in &self.terms {
            match index.get(m) {
                Some(&k) => v[k] = c.clone(),
                None => {
                    return Err(crate::Error::ContractViolation(format!(
                        "monomial {} is outside the basis",
                        m
                    )))
                }
            }
        }
        Ok(v)
    }
}

impl<M: Ord + Display, F: Scalar> Display for Element<M, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let s = c.to_string();
            if first {
                if c.is_one() {
                    write!(f, "{}", m)?;
                } else if (-c.clone()).is_one() {
                    write!(f, "-{}", m)?;
                } else {
                    write!(f, "{}*{}", s, m)?;
                }
            } else if c.is_one() {
                write!(f, " + {}", m)?;
            } else if (-c.clone()).is_one() {
                write!(f, " - {}", m)?;
            } else if let Some(rest) = s.strip_prefix('-') {
                write!(f, " - {}*{}", rest, m)?;
            } else {
                write!(f, " + {}*{}", s, m)?;
            }
            first = false;
        }
        Ok(())
    }
}

impl<M: Ord + Display, F: Scalar> Debug for Element<M, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element@{}({})", self.arity, self)
    }
}

pub type ElementOf<O, F> = Element<<O as MultiplicativeOperad>::Monomial, F>;

pub fn monomial<O: MultiplicativeOperad, F: Scalar>(op: &O, m: O::Monomial) -> ElementOf<O, F> {
    let arity = op.arity(&m);
    Element::from_terms(op.key(), arity, [(m, F::one())])
}

pub fn identity<O: MultiplicativeOperad, F: Scalar>(op: &O) -> ElementOf<O, F> {
    monomial(op, op.identity())
}

pub fn mu<O: MultiplicativeOperad, F: Scalar>(op: &O, k: usize) -> ElementOf<O, F> {
    monomial(op, op.mu(k))
}

pub fn unit<O: MultiplicativeOperad, F: Scalar>(op: &O) -> ElementOf<O, F> {
    mu(op, 0)
}

pub fn parse_element<O: MultiplicativeOperad, F: Scalar>(
    op: &O,
    s: &str,
) -> Result<ElementOf<O, F>> {
    Ok(monomial(op, op.parse_monomial(s.trim())?))
}

/// Internal degree of a homogeneous element, `None` for zero or mixed.
pub fn homogeneous_degree<O: MultiplicativeOperad, F: Scalar>(
    op: &O,
    x: &ElementOf<O, F>,
) -> Option<usize> {
    let mut degs = x.terms().keys().map(|m| op.degree(m));
    let d = degs.next()?;
    degs.all(|e| e == d).then_some(d)
}

/// Bilinear extension of `∘_i`.
pub fn compose<O: MultiplicativeOperad, F: Scalar>(
    op: &O,
    x: &ElementOf<O, F>,
    i: usize,
    y: &ElementOf<O, F>,
) -> Result<ElementOf<O, F>> {
    if x.key() != op.key() || y.key() != op.key() {
        return arg("elements belong to different operads");
    }
    if i == 0 || i > x.arity() {
        return arg(format!("slot {} out of range for arity {}", i, x.arity()));
    }
    let arity = x.arity() + y.arity() - 1;
    let mut out = Element::zero(op.key(), arity);
    for (mx, cx) in x.terms() {
        for (my, cy) in y.terms() {
            let c = cx.clone() * cy.clone();
            for (m, k) in op.compose_basis(mx, i, my) {
                out.add_term(m, c.clone() * F::from_i64(k));
            }
        }
    }
    Ok(out)
}

/// The coface `d^i : O(p) → O(p+1)`, `0 ≤ i ≤ p+1`.
pub fn coface<O: MultiplicativeOperad, F: Scalar>(
    op: &O,
    i: usize,
    x: &ElementOf<O, F>,
) -> Result<ElementOf<O, F>> {
    let p = x.arity();
    if i > p + 1 {
        return arg(format!("coface index {} out of range for arity {}", i, p));
    }
    let m2 = mu::<O, F>(op, 2);
    if i == 0 {
        compose(op, &m2, 2, x)
    } else if i == p + 1 {
        compose(op, &m2, 1, x)
    } else {
        compose(op, x, i, &m2)
    }
}

/// The codegeneracy `s^i : O(p) → O(p-1)`, `0 ≤ i ≤ p-1`.
pub fn codegeneracy<O: MultiplicativeOperad, F: Scalar>(
    op: &O,
    i: usize,
    x: &ElementOf<O, F>,
) -> Result<ElementOf<O, F>> {
    let p = x.arity();
    if p == 0 {
        return arg("codegeneracy on arity 0");
    }
    if i >= p {
        return arg(format!(
            "codegeneracy index {} out of range for arity {}",
            i, p
        ));
    }
    compose(op, x, i + 1, &unit::<O, F>(op))
}

/// Hochschild differential `∂ = Σ_{i=0}^{p+1} (-1)^i d^i`.
pub fn hochschild_boundary<O: MultiplicativeOperad, F: Scalar>(
    op: &O,
    x: &ElementOf<O, F>,
) -> Result<ElementOf<O, F>> {
    let p = x.arity();
    let mut out = Element::zero(op.key(), p + 1);
    for i in 0..=p + 1 {
        out.axpy(&F::sign(i as i64), &coface(op, i, x)?)?;
    }
    Ok(out)
}

/// A random linear combination of basis monomials of one arity with small
/// integer coefficients.
pub fn random_element<O: MultiplicativeOperad, F: Scalar, R: Rng>(
    op: &O,
    arity: usize,
    rng: &mut R,
) -> ElementOf<O, F> {
    let basis = op.basis(arity);
    let mut out = Element::zero(op.key(), arity);
    let picks = rng.gen_range(1..=basis.len().clamp(1, 4));
    for m in basis.choose_multiple(rng, picks) {
        let c = rng.gen_range(-3i64..=3);
        out.add_term(m.clone(), F::from_i64(c));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub checks: usize,
    pub passed: bool,
    pub first_failure: Option<String>,
}

impl IdentityReport {
    fn new() -> Self {
        IdentityReport {
            checks: 0,
            passed: true,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.passed {
            self.passed = false;
            self.first_failure = Some(what());
        }
    }

    fn merge(&mut self, other: IdentityReport) {
        self.checks += other.checks;
        if self.passed && !other.passed {
            self.passed = false;
            self.first_failure = other.first_failure;
        }
    }
}

fn cosimplicial_on<O: MultiplicativeOperad, F: Scalar>(
    op: &O,
    x: &ElementOf<O, F>,
    report: &mut IdentityReport,
) -> Result<()> {
    let p = x.arity();
    // d^j d^i = d^i d^{j-1}, i < j
    for j in 0..=p + 2 {
        for i in 0..j {
            let lhs = coface(op, j, &coface(op, i, x)?)?;
            let rhs = coface(op, i, &coface(op, j - 1, x)?)?;
            report.record(lhs == rhs, || {
                format!("d^{} d^{} != d^{} d^{} on {}", j, i, i, j - 1, x)
            });
        }
    }
    // s^j d^i
    for i in 0..=p + 1 {
        let dx = coface(op, i, x)?;
        for j in 0..=p {
            let lhs = codegeneracy(op, j, &dx)?;
            let rhs = if i < j {
                if p == 0 {
                    continue;
                }
                coface(op, i, &codegeneracy(op, j - 1, x)?)?
            } else if i == j || i == j + 1 {
                x.clone()
            } else {
                if p == 0 {
                    continue;
                }
                coface(op, i - 1, &codegeneracy(op, j, x)?)?
            };
            report.record(lhs == rhs, || {
                format!("s^{} d^{} identity fails on {}", j, i, x)
            });
        }
    }
    // s^j s^i = s^i s^{j+1}, i ≤ j
    if p >= 2 {
        for j in 0..p - 1 {
            for i in 0..=j {
                let lhs = codegeneracy(op, j, &codegeneracy(op, i, x)?)?;
                let rhs = codegeneracy(op, i, &codegeneracy(op, j + 1, x)?)?;
                report.record(lhs == rhs, || {
                    format!("s^{} s^{} != s^{} s^{} on {}", j, i, i, j + 1, x)
                });
            }
        }
    }
    Ok(())
}

/// Check every cosimplicial identity on all basis monomials of arity
/// `≤ max_arity` and on a few pseudo-random combinations.
pub fn verify_cosimplicial<O: MultiplicativeOperad, F: Scalar>(
    op: &O,
    max_arity: usize,
    seed: u64,
) -> Result<IdentityReport> {
    if max_arity < 2 {
        return arg("max_arity must be at least 2");
    }
    let mut report = IdentityReport::new();
    for p in 0..=max_arity {
        for m in op.basis(p) {
            cosimplicial_on(op, &monomial::<O, F>(op, m), &mut report)?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for p in 0..=max_arity {
        for _ in 0..4 {
            let x = random_element::<O, F, _>(op, p, &mut rng);
            cosimplicial_on(op, &x, &mut report)?;
        }
    }
    Ok(report)
}

/// Unit, sequential associativity and parallel (Koszul-signed) composition
/// axioms on every triple of basis monomials of arity `≤ max_arity` whose
/// full composite has arity `≤ max_composite`.
pub fn verify_operad_axioms<O: MultiplicativeOperad, F: Scalar>(
    op: &O,
    max_arity: usize,
    max_composite: usize,
) -> Result<IdentityReport> {
    let mut report = IdentityReport::new();
    let all: Vec<ElementOf<O, F>> = (0..=max_arity)
        .flat_map(|p| op.basis(p))
        .map(|m| monomial(op, m))
        .collect();
    let id = identity::<O, F>(op);
    for x in &all {
        for i in 1..=x.arity() {
            report.record(compose(op, x, i, &id)? == *x, || {
                format!("x ∘_{} id != x for {}", i, x)
            });
        }
        report.record(compose(op, &id, 1, x)? == *x, || {
            format!("id ∘_1 x != x for {}", x)
        });
    }
    let partial: Vec<IdentityReport> = all
        .par_iter()
        .map(|x| -> Result<IdentityReport> {
            let mut report = IdentityReport::new();
            for y in &all {
                for z in &all {
                    if x.arity() + y.arity() + z.arity() <= max_composite + 2 {
                        composition_axioms_on(op, x, y, z, &mut report)?;
                    }
                }
            }
            Ok(report)
        })
        .collect::<Result<_>>()?;
    for r in partial {
        report.merge(r);
    }
    // μ_k(μ_{j_1}, …, μ_{j_k}) = μ_{Σ j}
    for k in 0..=3usize {
        for js in small_tuples(k, 3) {
            let mut acc = mu::<O, F>(op, k);
            // substitute from the last slot so earlier slot indices stay valid
            for (slot, &j) in js.iter().enumerate().rev() {
                acc = compose(op, &acc, slot + 1, &mu::<O, F>(op, j))?;
            }
            let total: usize = js.iter().sum();
            report.record(acc == mu::<O, F>(op, total), || {
                format!("μ_{}(μ_{:?}) != μ_{}", k, js, total)
            });
        }
    }
    Ok(report)
}

fn composition_axioms_on<O: MultiplicativeOperad, F: Scalar>(
    op: &O,
    x: &ElementOf<O, F>,
    y: &ElementOf<O, F>,
    z: &ElementOf<O, F>,
    report: &mut IdentityReport,
) -> Result<()> {
    let deg = |x: &ElementOf<O, F>| homogeneous_degree(op, x).unwrap_or(0) as i64;
    let (p, r) = (x.arity(), y.arity());
    for i in 1..=p {
        let xy = compose(op, x, i, y)?;
        for j in 1..=r {
            let lhs = compose(op, &xy, i + j - 1, z)?;
            let rhs = compose(op, x, i, &compose(op, y, j, z)?)?;
            report.record(lhs == rhs, || {
                format!(
                    "associativity fails: x={} i={} y={} j={} z={}",
                    x, i, y, j, z
                )
            });
        }
        for j in i + 1..=p {
            let lhs = compose(op, &compose(op, x, j, z)?, i, y)?;
            let rhs = compose(op, &xy, j + r - 1, z)?.scale(&F::sign(deg(y) * deg(z)));
            report.record(lhs == rhs, || {
                format!(
                    "parallel composition fails: x={} i={} y={} j={} z={}",
                    x, i, y, j, z
                )
            });
        }
    }
    Ok(())
}

/// Associativity and parallel composition on `samples` seeded triples of
/// random homogeneous elements of arity `≤ max_arity` whose full composite
/// has arity `≤ max_composite`.
pub fn verify_operad_axioms_sampled<O: MultiplicativeOperad, F: Scalar>(
    op: &O,
    max_arity: usize,
    max_composite: usize,
    samples: usize,
    seed: u64,
) -> Result<IdentityReport> {
    if max_composite + 2 < 3 || max_arity == 0 {
        return arg("bounds too small for a composable triple");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |p: usize, rng: &mut ChaCha8Rng| {
        let basis = op.basis(p);
        let d = op.degree(basis.choose(rng).expect("nonempty basis"));
        let same: Vec<_> = basis.into_iter().filter(|m| op.degree(m) == d).collect();
        let mut out = Element::zero(op.key(), p);
        for m in same.choose_multiple(rng, same.len().min(3)) {
            out.add_term(m.clone(), F::from_i64(rng.gen_range(1i64..=3)));
        }
        out
    };
    let mut arities = || loop {
        let a: [usize; 3] = std::array::from_fn(|_| rng.gen_range(1..=max_arity));
        if a[0] + a[1] + a[2] <= max_composite + 2 {
            return a;
        }
    };
    let shapes: Vec<[usize; 3]> = (0..samples).map(|_| arities()).collect();
    let triples: Vec<_> = shapes
        .iter()
        .map(|a| {
            (
                pick(a[0], &mut rng),
                pick(a[1], &mut rng),
                pick(a[2], &mut rng),
            )
        })
        .collect();
    let partial: Vec<IdentityReport> = triples
        .par_iter()
        .map(|(x, y, z)| {
            let mut report = IdentityReport::new();
            composition_axioms_on(op, x, y, z, &mut report)?;
            Ok(report)
        })
        .collect::<Result<_>>()?;
    let mut report = IdentityReport::new();
    for r in partial {
        report.merge(r);
    }
    Ok(report)
}

fn small_tuples(len: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..=max).map(move |j| {
                    let mut t = t.clone();
                    t.push(j);
                    t
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{AssocOperad, PoisOperad, F32003, Q};

    #[test]
    fn assoc_passes_both_checks() {
        let op = AssocOperad;
        assert!(verify_cosimplicial::<_, Q>(&op, 5, 1).unwrap().passed);
        assert!(verify_operad_axioms::<_, Q>(&op, 3, 7).unwrap().passed);
    }

    #[test]
    fn pois_cosimplicial_both_parities() {
        for n in [5, 6] {
            let op = PoisOperad::new(n).unwrap();
            let r = verify_cosimplicial::<_, F32003>(&op, 4, 11).unwrap();
            assert!(r.passed, "{:?}", r.first_failure);
        }
    }

    #[test]
    fn pois_operad_axioms_both_parities() {
        for n in [2, 3, 5, 6] {
            let op = PoisOperad::new(n).unwrap();
            let r = verify_operad_axioms::<_, Q>(&op, 3, 7).unwrap();
            assert!(r.passed, "n={} {:?}", n, r.first_failure);
        }
    }

    #[test]
    fn boundary_squares_to_zero() {
        let op = PoisOperad::new(6).unwrap();
        for p in 0..=4 {
            for m in op.basis(p) {
                let x = monomial::<_, Q>(&op, m);
                let dd = hochschild_boundary(&op, &hochschild_boundary(&op, &x).unwrap()).unwrap();
                assert!(dd.is_zero(), "∂∂ {} = {}", x, dd);
            }
        }
    }

    #[test]
    fn argument_errors() {
        let op = AssocOperad;
        let x = mu::<_, Q>(&op, 2);
        assert!(compose(&op, &x, 3, &x).is_err());
        assert!(compose(&op, &x, 0, &x).is_err());
        assert!(coface(&op, 4, &x).is_err());
        assert!(verify_cosimplicial::<_, Q>(&op, 1, 0).is_err());
        let p5 = PoisOperad::new(5).unwrap();
        let p6 = PoisOperad::new(6).unwrap();
        let y5 = mu::<_, Q>(&p5, 2);
        let y6 = mu::<_, Q>(&p6, 2);
        assert!(y5.try_add(&y6).is_err());
        assert!(compose(&p5, &y5, 1, &y6).is_err());
    }
}
