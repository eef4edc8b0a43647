//! The bracket `Ψ` and the cup product on the Hochschild complex.
//!
//! For `x ∈ C(p, ·)` of total degree `q` and `y ∈ C(r, ·)` of total degree
//! `s`,
//!
//! ```text
//! Ψ(x, y) = Σ_i (-1)^{ε_i} x ∘_i y  -  (-1)^{(q+1)(s+1)} Σ_j (-1)^{ε'_j} y ∘_j x
//! ε_i  = (r-1)(p-i) + (p-1)(r+s)
//! ε'_j = (p-1)(r-j) + (p+q)(r-1)
//! x ∪ y = (-1)^{ps} (μ_2 ∘_1 x) ∘_{p+1} y
//! ```
//!
//! With these conventions
//! `∂Ψ(x,y) = (-1)^{|y|} Ψ(∂x,y) + (-1)^{p+1} Ψ(x,∂y)`, where `|y|` is the
//! internal degree, and `∂(x∪y) = (-1)^s (∂x)∪y + x∪(∂y)`. Both operations
//! therefore descend to homology.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hochschild::{Bidegree, ComplexWindow};
use crate::operad::{compose, homogeneous_degree, mu, Element, ElementOf, MultiplicativeOperad};
use crate::scalar::Scalar;

/// Exponents in the bracket for fixed arities and total degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SignExponents {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub s: i64,
}

impl SignExponents {
    pub fn left(&self, i: i64) -> i64 {
        (self.r - 1) * (self.p - i) + (self.p - 1) * (self.r + self.s)
    }

    pub fn right(&self, j: i64) -> i64 {
        (self.p - 1) * (self.r - j) + (self.p + self.q) * (self.r - 1)
    }

    pub fn swap(&self) -> i64 {
        (self.q + 1) * (self.s + 1)
    }
}

/// Total degree `|x| - p` of a homogeneous element; `None` for zero.
pub fn total_degree<O: MultiplicativeOperad, F: Scalar>(
    op: &O,
    x: &ElementOf<O, F>,
) -> Result<Option<i64>> {
    if x.is_zero() {
        return Ok(None);
    }
    let d = homogeneous_degree(op, x)
        .ok_or_else(|| Error::Argument(format!("{} is not homogeneous", x)))?;
    Ok(Some(d as i64 - x.arity() as i64))
}

pub fn psi_bracket<O: MultiplicativeOperad, F: Scalar>(
    op: &O,
    x: &ElementOf<O, F>,
    y: &ElementOf<O, F>,
) -> Result<ElementOf<O, F>> {
    let (p, r) = (x.arity(), y.arity());
    if p + r == 0 {
        return Ok(Element::zero(op.key(), 0));
    }
    let out_arity = p + r - 1;
    let (Some(q), Some(s)) = (total_degree(op, x)?, total_degree(op, y)?) else {
        return Ok(Element::zero(op.key(), out_arity));
    };
    let e = SignExponents {
        p: p as i64,
        q,
        r: r as i64,
        s,
    };
    let mut out = Element::zero(op.key(), out_arity);
    for i in 1..=p {
        out.axpy(&F::sign(e.left(i as i64)), &compose(op, x, i, y)?)?;
    }
    for j in 1..=r {
        out.axpy(
            &-F::sign(e.swap() + e.right(j as i64)),
            &compose(op, y, j, x)?,
        )?;
    }
    Ok(out)
}

pub fn cup_product<O: MultiplicativeOperad, F: Scalar>(
    op: &O,
    x: &ElementOf<O, F>,
    y: &ElementOf<O, F>,
) -> Result<ElementOf<O, F>> {
    let p = x.arity();
    let Some(s) = total_degree(op, y)? else {
        return Ok(Element::zero(op.key(), p + y.arity()));
    };
    let left = compose(op, &mu::<O, F>(op, 2), 1, x)?;
    Ok(compose(op, &left, p + 1, y)?.scale(&F::sign(p as i64 * s)))
}

/// A homology class with its cycle representative and its coordinates in
/// the chosen basis of the homology group.
#[derive(Clone)]
pub struct HomologyClass<M: Ord, F> {
    pub bidegree: Bidegree,
    pub representative: Element<M, F>,
    pub coordinates: Vec<F>,
}

impl<M: Ord + Clone + std::fmt::Display, F: Scalar> std::fmt::Debug for HomologyClass<M, F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "class{}[{}]", self.bidegree, self.representative)
    }
}

impl<M: Ord + Clone + std::fmt::Display, F: Scalar> HomologyClass<M, F> {
    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(|c| c.is_zero())
    }

    pub fn total_degree(&self) -> i64 {
        self.bidegree.total()
    }

    /// Equality in homology; zero classes are equal whatever their bidegree.
    pub fn same_class(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.bidegree == other.bidegree && self.coordinates == other.coordinates
    }

    pub fn scale(&self, c: &F) -> Self {
        HomologyClass {
            bidegree: self.bidegree,
            representative: self.representative.scale(c),
            coordinates: self
                .coordinates
                .iter()
                .map(|v| v.clone() * c.clone())
                .collect(),
        }
    }

    /// Sum of two classes in the same bidegree (or with a zero summand).
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if other.is_zero() && other.bidegree != self.bidegree {
            return Ok(self.clone());
        }
        if self.is_zero() && other.bidegree != self.bidegree {
            return Ok(other.clone());
        }
        if self.bidegree != other.bidegree || self.coordinates.len() != other.coordinates.len() {
            return Err(Error::Argument(format!(
                "cannot add classes in {} and {}",
                self.bidegree, other.bidegree
            )));
        }
        Ok(HomologyClass {
            bidegree: self.bidegree,
            representative: self.representative.try_add(&other.representative)?,
            coordinates: self
                .coordinates
                .iter()
                .zip(&other.coordinates)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }
}

/// The class of a cycle of internal degree `q`.
pub fn class_of<O: MultiplicativeOperad, F: Scalar>(
    w: &ComplexWindow<O, F>,
    x: &ElementOf<O, F>,
    q: usize,
) -> Result<HomologyClass<O::Monomial, F>> {
    let p = x.arity();
    if x.is_zero() {
        let coordinates = match w.homology(p, q) {
            Ok(h) => vec![F::zero(); h.rank()],
            Err(Error::WindowTooSmall { .. }) => Vec::new(),
            Err(e) => return Err(e),
        };
        return Ok(HomologyClass {
            bidegree: Bidegree::new(p, q),
            representative: x.clone(),
            coordinates,
        });
    }
    let h = w.homology(p, q)?;
    let v = w.coordinates(x, q)?;
    let coordinates = h.presentation.reduce(&v)?;
    Ok(HomologyClass {
        bidegree: Bidegree::new(p, q),
        representative: x.clone(),
        coordinates,
    })
}

/// The chosen basis of `H(p, q)`.
pub fn basis_classes<O: MultiplicativeOperad, F: Scalar>(
    w: &ComplexWindow<O, F>,
    p: usize,
    q: usize,
) -> Result<Vec<HomologyClass<O::Monomial, F>>> {
    let h = w.homology(p, q)?;
    let k = h.rank();
    h.presentation
        .representatives
        .iter()
        .enumerate()
        .map(|(idx, v)| {
            let mut coordinates = vec![F::zero(); k];
            coordinates[idx] = F::one();
            Ok(HomologyClass {
                bidegree: Bidegree::new(p, q),
                representative: w.element(p, q, v)?,
                coordinates,
            })
        })
        .collect()
}

pub fn bracket_classes<O: MultiplicativeOperad, F: Scalar>(
    w: &ComplexWindow<O, F>,
    a: &HomologyClass<O::Monomial, F>,
    b: &HomologyClass<O::Monomial, F>,
) -> Result<HomologyClass<O::Monomial, F>> {
    let x = psi_bracket(w.operad().as_ref(), &a.representative, &b.representative)?;
    class_of(w, &x, a.bidegree.q + b.bidegree.q)
}

pub fn cup_classes<O: MultiplicativeOperad, F: Scalar>(
    w: &ComplexWindow<O, F>,
    a: &HomologyClass<O::Monomial, F>,
    b: &HomologyClass<O::Monomial, F>,
) -> Result<HomologyClass<O::Monomial, F>> {
    let x = cup_product(w.operad().as_ref(), &a.representative, &b.representative)?;
    class_of(w, &x, a.bidegree.q + b.bidegree.q)
}

/// Linear combination of the basis classes of `H(p, q)`.
pub fn combine_classes<O: MultiplicativeOperad, F: Scalar>(
    w: &ComplexWindow<O, F>,
    p: usize,
    q: usize,
    coordinates: &[F],
) -> Result<HomologyClass<O::Monomial, F>> {
    let basis = basis_classes(w, p, q)?;
    if basis.len() != coordinates.len() {
        return Err(Error::Argument(format!(
            "{} coordinates for a homology group of rank {}",
            coordinates.len(),
            basis.len()
        )));
    }
    let mut rep = Element::zero(w.operad().key(), p);
    for (c, b) in coordinates.iter().zip(&basis) {
        rep.axpy(c, &b.representative)?;
    }
    Ok(HomologyClass {
        bidegree: Bidegree::new(p, q),
        representative: rep,
        coordinates: coordinates.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::{hochschild_boundary, monomial, random_element};
    use crate::{PoisOperad, Q};
    use num_traits::One;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_homogeneous(
        op: &PoisOperad,
        p: usize,
        m: usize,
        rng: &mut ChaCha8Rng,
    ) -> ElementOf<PoisOperad, Q> {
        let x = random_element::<_, Q, _>(op, p, rng);
        let d = m * op.bracket_degree();
        Element::from_terms(
            op.key(),
            p,
            x.terms()
                .iter()
                .filter(|(k, _)| op.degree(k) == d)
                .map(|(k, v)| (k.clone(), v.clone())),
        )
    }

    #[test]
    fn bracket_of_products() {
        for n in [5, 6] {
            let op = PoisOperad::new(n).unwrap();
            let m2 = mu::<_, Q>(&op, 2);
            let b = psi_bracket(&op, &m2, &m2).unwrap();
            assert!(hochschild_boundary(&op, &b).unwrap().is_zero());
            let e = mu::<_, Q>(&op, 0);
            assert!(psi_bracket(&op, &e, &e).unwrap().is_zero());
        }
    }

    #[test]
    fn chain_level_antisymmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [5, 6] {
            let op = PoisOperad::new(n).unwrap();
            for _ in 0..30 {
                let (p, r) = (
                    rand::Rng::gen_range(&mut rng, 0..=3),
                    rand::Rng::gen_range(&mut rng, 0..=3),
                );
                let x = random_homogeneous(
                    &op,
                    p,
                    rand::Rng::gen_range(&mut rng, 0..p.max(1)),
                    &mut rng,
                );
                let y = random_homogeneous(
                    &op,
                    r,
                    rand::Rng::gen_range(&mut rng, 0..r.max(1)),
                    &mut rng,
                );
                let (Some(q), Some(s)) = (
                    total_degree(&op, &x).unwrap(),
                    total_degree(&op, &y).unwrap(),
                ) else {
                    continue;
                };
                let lhs = psi_bracket(&op, &x, &y).unwrap();
                let rhs = psi_bracket(&op, &y, &x)
                    .unwrap()
                    .scale(&-Q::sign((q + 1) * (s + 1)));
                assert_eq!(lhs, rhs, "n={} x={} y={}", n, x, y);
            }
        }
    }

    #[test]
    fn leibniz_rules() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [5, 6] {
            let op = PoisOperad::new(n).unwrap();
            for _ in 0..40 {
                let (p, r) = (
                    rand::Rng::gen_range(&mut rng, 1..=3),
                    rand::Rng::gen_range(&mut rng, 1..=3),
                );
                let x = random_homogeneous(&op, p, rand::Rng::gen_range(&mut rng, 0..p), &mut rng);
                let y = random_homogeneous(&op, r, rand::Rng::gen_range(&mut rng, 0..r), &mut rng);
                let (Some(_), Some(s)) = (
                    total_degree(&op, &x).unwrap(),
                    total_degree(&op, &y).unwrap(),
                ) else {
                    continue;
                };
                let dx = hochschild_boundary(&op, &x).unwrap();
                let dy = hochschild_boundary(&op, &y).unwrap();
                let lhs = hochschild_boundary(&op, &psi_bracket(&op, &x, &y).unwrap()).unwrap();
                let my = op.degree(y.terms().keys().next().unwrap()) as i64;
                let mut rhs = psi_bracket(&op, &dx, &y).unwrap().scale(&Q::sign(my));
                rhs.axpy(&Q::sign(p as i64 + 1), &psi_bracket(&op, &x, &dy).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs, "bracket n={} x={} y={}", n, x, y);

                let lhs = hochschild_boundary(&op, &cup_product(&op, &x, &y).unwrap()).unwrap();
                let mut rhs = cup_product(&op, &dx, &y).unwrap().scale(&Q::sign(s));
                rhs.axpy(&Q::one(), &cup_product(&op, &x, &dy).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs, "cup n={} x={} y={}", n, x, y);
            }
        }
    }

    #[test]
    fn cup_with_unit() {
        let op = PoisOperad::new(5).unwrap();
        let x = monomial::<_, Q>(&op, op.parse_monomial("[x1,x2]").unwrap());
        let e = mu::<_, Q>(&op, 0);
        assert_eq!(cup_product(&op, &e, &x).unwrap(), x);
        assert_eq!(cup_product(&op, &x, &e).unwrap(), x);
    }
}
