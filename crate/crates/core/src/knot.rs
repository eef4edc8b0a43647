//! Named classes of the knot-space spectral sequence and their products.
//!
//! The E² term for the space of long knots in `R^n` (modulo immersions) is
//! the Hochschild homology of `Pois_n`. Here `ι` is the class of `[x1,x2]`
//! in bidegree `(-2, n-1)` and `v₂` is a chosen class in `(-4, 2n-2)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gerstenhaber::{basis_classes, bracket_classes, class_of, cup_classes, HomologyClass};
use crate::hochschild::{Bidegree, ComplexWindow, WindowConfig};
use crate::operad::{monomial, MultiplicativeOperad};
use crate::pois::{PoisMonomial, PoisOperad};
use crate::scalar::Scalar;

pub type Class<F> = HomologyClass<PoisMonomial, F>;

pub struct KnotContext<F: Scalar> {
    n: usize,
    window: ComplexWindow<PoisOperad, F>,
    registry: BTreeMap<String, Class<F>>,
    warnings: Vec<String>,
}

/// One entry of [`KnotContext::poisson_table`].
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub operation: String,
    pub left: String,
    pub right: String,
    pub bidegree: Bidegree,
    pub total_degree: i64,
    pub coordinates: Vec<String>,
    pub is_zero: bool,
}

impl<F: Scalar> KnotContext<F> {
    pub fn new(n: usize, config: WindowConfig) -> Result<Self> {
        let op = Arc::new(PoisOperad::new(n)?);
        Ok(Self::with_window(ComplexWindow::new(op, config)))
    }

    pub fn with_window(window: ComplexWindow<PoisOperad, F>) -> Self {
        let n = window.operad().n();
        let mut warnings = Vec::new();
        if n < 4 {
            warnings.push(format!(
                "n = {} < 4: the complex is computed but has no knot-space interpretation",
                n
            ));
        }
        KnotContext {
            n,
            window,
            registry: BTreeMap::new(),
            warnings,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn window(&self) -> &ComplexWindow<PoisOperad, F> {
        &self.window
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    fn op(&self) -> &PoisOperad {
        self.window.operad().as_ref()
    }

    /// The class of `[x1,x2]` at `(-2, n-1)`.
    pub fn class_iota(&self) -> Result<Class<F>> {
        let op = self.op();
        let m = op.parse_monomial("[x1,x2]")?;
        let x = monomial::<_, F>(op, m);
        class_of(&self.window, &x, op.bracket_degree())
    }

    /// `ι ∪ ι` at `(-4, 2n-2)`.
    pub fn iota_squared(&self) -> Result<Class<F>> {
        let iota = self.class_iota()?;
        cup_classes(&self.window, &iota, &iota)
    }

    /// For n odd, the basis class of `H(4, 2n-2)` that is not the pivot of
    /// `ι ∪ ι` (first nonzero coordinate); for n even, the generator.
    pub fn class_v2(&self) -> Result<Class<F>> {
        let q = 2 * self.op().bracket_degree();
        let basis = basis_classes(&self.window, 4, q)?;
        let expected = if self.n % 2 == 1 { 2 } else { 1 };
        if basis.len() != expected {
            return Err(Error::ContractViolation(format!(
                "rank at {} is {}, expected {}",
                Bidegree::new(4, q),
                basis.len(),
                expected
            )));
        }
        if expected == 1 {
            return Ok(basis.into_iter().next().expect("rank one"));
        }
        let sq = self.iota_squared()?;
        let pivot = sq
            .coordinates
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::ContractViolation("ι∪ι vanishes for n odd".into()))?;
        Ok(basis.into_iter().nth(1 - pivot).expect("rank two"))
    }

    pub fn register(&mut self, name: &str, class: Class<F>) {
        self.registry.insert(name.to_string(), class);
    }

    /// Registers `iota` and `v2`.
    pub fn register_defaults(&mut self) -> Result<()> {
        let iota = self.class_iota()?;
        let v2 = self.class_v2()?;
        self.register("iota", iota);
        self.register("v2", v2);
        Ok(())
    }

    pub fn registry(&self) -> &BTreeMap<String, Class<F>> {
        &self.registry
    }

    /// All cups and brackets among registered classes, then once more
    /// against the registered classes, keeping results of total degree at
    /// most `max_total_degree`.
    pub fn poisson_table(&self, max_total_degree: i64) -> Result<Vec<TableRow>> {
        let base: Vec<(String, Class<F>)> = self
            .registry
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        let mut rows = Vec::new();
        let mut first_round = Vec::new();
        for (a, x) in &base {
            for (b, y) in &base {
                for (name, cls) in self.products(a, x, b, y, max_total_degree)? {
                    rows.push(cls.0);
                    first_round.push((name, cls.1));
                }
            }
        }
        for (a, x) in &first_round {
            for (b, y) in &base {
                for (_, cls) in self.products(a, x, b, y, max_total_degree)? {
                    rows.push(cls.0);
                }
                for (_, cls) in self.products(b, y, a, x, max_total_degree)? {
                    rows.push(cls.0);
                }
            }
        }
        Ok(rows)
    }

    #[allow(clippy::type_complexity)]
    fn products(
        &self,
        a: &str,
        x: &Class<F>,
        b: &str,
        y: &Class<F>,
        bound: i64,
    ) -> Result<Vec<(String, (TableRow, Class<F>))>> {
        let mut out = Vec::new();
        let cup_total = x.total_degree() + y.total_degree();
        if cup_total <= bound {
            let c = cup_classes(&self.window, x, y)?;
            out.push((format!("cup({},{})", a, b), (row("cup", a, b, &c), c)));
        }
        if cup_total < bound && x.bidegree.p + y.bidegree.p > 0 {
            let c = bracket_classes(&self.window, x, y)?;
            out.push((format!("psi({},{})", a, b), (row("psi", a, b, &c), c)));
        }
        Ok(out)
    }
}

fn row<F: Scalar>(op: &str, a: &str, b: &str, c: &Class<F>) -> TableRow {
    TableRow {
        operation: op.to_string(),
        left: a.to_string(),
        right: b.to_string(),
        bidegree: c.bidegree,
        total_degree: c.total_degree(),
        coordinates: c.coordinates.iter().map(|v| v.to_string()).collect(),
        is_zero: c.is_zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::hochschild_boundary;
    use crate::Q;
    use num_traits::Zero;

    #[test]
    fn iota_is_a_cycle_of_the_right_degree() {
        for n in [5, 6] {
            let ctx: KnotContext<Q> = KnotContext::new(n, WindowConfig::default()).unwrap();
            let iota = ctx.class_iota().unwrap();
            assert_eq!(iota.bidegree, Bidegree::new(2, n - 1));
            assert_eq!(iota.total_degree(), n as i64 - 3);
            assert!(!iota.is_zero());
            assert!(hochschild_boundary(ctx.op(), &iota.representative)
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn v2_complements_iota_squared() {
        let ctx: KnotContext<Q> = KnotContext::new(5, WindowConfig::default()).unwrap();
        let sq = ctx.iota_squared().unwrap();
        let v2 = ctx.class_v2().unwrap();
        assert!(!sq.is_zero());
        assert_eq!(v2.total_degree(), 4);
        // the 2x2 coordinate matrix is invertible
        let (a, b) = (&sq.coordinates, &v2.coordinates);
        assert!(!(a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone()).is_zero());
        let ctx6: KnotContext<Q> = KnotContext::new(6, WindowConfig::default()).unwrap();
        assert_eq!(ctx6.class_v2().unwrap().coordinates.len(), 1);
    }

    #[test]
    fn small_n_warns() {
        let ctx: KnotContext<Q> = KnotContext::new(3, WindowConfig::default()).unwrap();
        assert_eq!(ctx.warnings().len(), 1);
    }

    #[test]
    fn table_contains_the_slice_generators() {
        let mut ctx: KnotContext<Q> = KnotContext::new(5, WindowConfig::default()).unwrap();
        ctx.register_defaults().unwrap();
        let rows = ctx.poisson_table(7).unwrap();
        assert!(rows
            .iter()
            .any(|r| r.operation == "psi" && r.left == "iota" && r.right == "v2" && !r.is_zero));
        assert!(rows.iter().all(|r| r.total_degree <= 7));
    }
}
