//! The Hochschild complex of a multiplicative operad, truncated to a window.
//!
//! `C(p, q)` is spanned by monomials of arity `p` and internal degree `q`;
//! the differential raises arity and keeps `q`. The total degree of `(p, q)`
//! is `q - p`. By default the window uses the normalized subcomplex (the
//! intersection of the kernels of the codegeneracies), which computes the
//! same homology.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use crate::cache::{CachedBoundary, DiskCache, FORMAT};
use crate::error::{Error, Result};
use crate::linalg::{QuotientPresentation, SparseMatrix};
use crate::operad::{Element, ElementOf, MultiplicativeOperad};
use crate::scalar::Scalar;

/// Arity `p` and internal degree `q`; printed as `(-p,q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Bidegree {
    pub p: usize,
    pub q: usize,
}

impl Bidegree {
    pub fn new(p: usize, q: usize) -> Self {
        Bidegree { p, q }
    }

    pub fn total(&self) -> i64 {
        self.q as i64 - self.p as i64
    }

    /// Parse `-p,q` (the sign of the first entry is optional).
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = t
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("bidegree {:?} is not of the form -p,q", s)))?;
        let a: i64 = a
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad arity in {:?}", s)))?;
        let b: i64 = b
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree in {:?}", s)))?;
        if b < 0 {
            return Err(Error::Argument(format!(
                "negative internal degree in {:?}",
                s
            )));
        }
        Ok(Bidegree::new(a.unsigned_abs() as usize, b as usize))
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(-{},{})", self.p, self.q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WindowConfig {
    pub max_arity: usize,
    /// Largest number of brackets; the degree bound is this times the step.
    pub max_complexity: usize,
    pub normalized: bool,
}

impl Default for WindowConfig {
    fn default() -> Self {
        WindowConfig {
            max_arity: 8,
            max_complexity: 4,
            normalized: true,
        }
    }
}

/// The homology at one bidegree with a chosen basis of classes.
#[derive(Clone, Debug)]
pub struct HomologyGroup<M, F> {
    pub bidegree: Bidegree,
    pub chain_basis: Arc<Vec<M>>,
    pub presentation: QuotientPresentation<F>,
}

impl<M: Clone + Ord + fmt::Display, F: Scalar> HomologyGroup<M, F> {
    pub fn rank(&self) -> usize {
        self.presentation.dim()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceEntry {
    pub bidegree: Bidegree,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SliceReport {
    pub total_degree: i64,
    pub entries: Vec<SliceEntry>,
    /// False when the slice is not finite and only the window was scanned.
    pub complete: bool,
}

type IntBlock = Arc<CachedBoundary>;
type ByBidegree<T> = Mutex<HashMap<(usize, usize), T>>;

pub struct ComplexWindow<O: MultiplicativeOperad, F> {
    op: Arc<O>,
    config: WindowConfig,
    cache: Option<DiskCache>,
    bases: ByBidegree<Arc<Vec<O::Monomial>>>,
    blocks: ByBidegree<IntBlock>,
    homology: ByBidegree<Arc<HomologyGroup<O::Monomial, F>>>,
}

impl<O: MultiplicativeOperad, F: Scalar> ComplexWindow<O, F> {
    pub fn new(op: Arc<O>, config: WindowConfig) -> Self {
        ComplexWindow {
            op,
            config,
            cache: None,
            bases: Mutex::new(HashMap::new()),
            blocks: Mutex::new(HashMap::new()),
            homology: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_cache_dir(mut self, root: &Path) -> Result<Self> {
        self.cache = Some(DiskCache::new(
            root,
            &self.op.name(),
            self.config.normalized,
        )?);
        Ok(self)
    }

    pub fn operad(&self) -> &Arc<O> {
        &self.op
    }

    pub fn config(&self) -> WindowConfig {
        self.config
    }

    pub fn max_degree(&self) -> usize {
        self.config.max_complexity * self.op.degree_step()
    }

    fn known_empty(&self, p: usize, q: usize) -> bool {
        self.config.normalized && self.op.normalized_is_empty(p, q)
    }

    /// Chain basis of `C(p, q)`.
    pub fn basis(&self, p: usize, q: usize) -> Result<Arc<Vec<O::Monomial>>> {
        if self.known_empty(p, q) {
            return Ok(Arc::new(Vec::new()));
        }
        if p > self.config.max_arity || q > self.max_degree() {
            return Err(Error::WindowTooSmall {
                missing: vec![(-(p as i64), q as i64)],
            });
        }
        if let Some(b) = self.bases.lock().expect("basis lock").get(&(p, q)) {
            return Ok(b.clone());
        }
        let b = Arc::new(if self.config.normalized {
            self.op.normalized_basis(p, q)
        } else {
            self.op.basis_in_degree(p, q)
        });
        self.bases
            .lock()
            .expect("basis lock")
            .insert((p, q), b.clone());
        Ok(b)
    }

    pub fn index(&self, p: usize, q: usize) -> Result<BTreeMap<O::Monomial, usize>> {
        Ok(self
            .basis(p, q)?
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k))
            .collect())
    }

    fn integer_block(&self, p: usize, q: usize) -> Result<IntBlock> {
        if let Some(b) = self.blocks.lock().expect("block lock").get(&(p, q)) {
            return Ok(b.clone());
        }
        let source = self.basis(p, q)?;
        let target = if source.is_empty() {
            Arc::new(Vec::new())
        } else {
            self.basis(p + 1, q)?
        };
        let source_names: Vec<String> = source.iter().map(|m| m.to_string()).collect();
        let target_names: Vec<String> = target.iter().map(|m| m.to_string()).collect();
        let cached = self.cache.as_ref().and_then(|c| c.load(p, q)).filter(|b| {
            b.operad == self.op.name()
                && b.normalized == self.config.normalized
                && b.source == source_names
                && b.target == target_names
        });
        let block = match cached {
            Some(b) => b,
            None => {
                let index: BTreeMap<O::Monomial, usize> = target
                    .iter()
                    .enumerate()
                    .map(|(k, m)| (m.clone(), k))
                    .collect();
                let columns: Vec<Result<Vec<(usize, usize, i64)>>> = source
                    .par_iter()
                    .enumerate()
                    .map(|(col, m)| {
                        integer_boundary(self.op.as_ref(), m, p)
                            .into_iter()
                            .map(|(t, v)| match index.get(&t) {
                                Some(&row) => Ok((row, col, v)),
                                None => Err(Error::ContractViolation(format!(
                                    "boundary of {} has the term {} outside C{}",
                                    m,
                                    t,
                                    Bidegree::new(p + 1, q)
                                ))),
                            })
                            .collect()
                    })
                    .collect();
                let mut entries = Vec::new();
                for c in columns {
                    entries.extend(c?);
                }
                entries.sort_unstable();
                let b = CachedBoundary {
                    format: FORMAT.to_string(),
                    operad: self.op.name(),
                    normalized: self.config.normalized,
                    p,
                    q,
                    source: source_names,
                    target: target_names,
                    entries,
                };
                if let Some(c) = &self.cache {
                    c.store(&b)?;
                }
                b
            }
        };
        let block = Arc::new(block);
        self.blocks
            .lock()
            .expect("block lock")
            .insert((p, q), block.clone());
        Ok(block)
    }

    /// Matrix of `∂ : C(p, q) → C(p+1, q)` (rows index the target basis).
    pub fn boundary(&self, p: usize, q: usize) -> Result<SparseMatrix<F>> {
        let b = self.integer_block(p, q)?;
        let mut dense_rows: Vec<Vec<(usize, F)>> = vec![Vec::new(); b.target.len()];
        for &(r, c, v) in &b.entries {
            dense_rows[r].push((c, F::from_i64(v)));
        }
        let dense: Vec<Vec<F>> = dense_rows
            .iter()
            .map(|r| crate::linalg::densify(r, b.source.len()))
            .collect();
        Ok(SparseMatrix::from_dense(
            b.target.len(),
            b.source.len(),
            &dense,
        ))
    }

    pub fn homology(&self, p: usize, q: usize) -> Result<Arc<HomologyGroup<O::Monomial, F>>> {
        if let Some(h) = self.homology.lock().expect("homology lock").get(&(p, q)) {
            return Ok(h.clone());
        }
        let basis = self.basis(p, q)?;
        let dim = basis.len();
        let outgoing = if dim == 0 {
            None
        } else {
            Some(self.boundary(p, q)?)
        };
        let incoming = if p == 0 || dim == 0 || self.basis(p - 1, q)?.is_empty() {
            None
        } else {
            Some(self.boundary(p - 1, q)?)
        };
        let presentation = QuotientPresentation::new(dim, incoming.as_ref(), outgoing.as_ref())?;
        let h = Arc::new(HomologyGroup {
            bidegree: Bidegree::new(p, q),
            chain_basis: basis,
            presentation,
        });
        self.homology
            .lock()
            .expect("homology lock")
            .insert((p, q), h.clone());
        Ok(h)
    }

    pub fn homology_rank(&self, p: usize, q: usize) -> Result<usize> {
        Ok(self.homology(p, q)?.rank())
    }

    /// Coordinates of an element of `C(p, q)` in the chain basis.
    pub fn coordinates(&self, x: &ElementOf<O, F>, q: usize) -> Result<Vec<F>> {
        let p = x.arity();
        let basis = self.basis(p, q)?;
        x.coordinates(&self.index(p, q)?, basis.len())
    }

    pub fn element(&self, p: usize, q: usize, coords: &[F]) -> Result<ElementOf<O, F>> {
        let basis = self.basis(p, q)?;
        if coords.len() != basis.len() {
            return Err(Error::Argument(format!(
                "{} coordinates for a basis of size {}",
                coords.len(),
                basis.len()
            )));
        }
        Ok(Element::from_terms(
            self.op.key(),
            p,
            basis.iter().cloned().zip(coords.iter().cloned()),
        ))
    }

    /// All nonzero homology of total degree `t`.
    ///
    /// When the normalized complex is known to vanish outside a band the
    /// slice is finite, and any part of it outside the window is reported as
    /// [`Error::WindowTooSmall`].
    pub fn total_degree_slice(&self, t: i64) -> Result<SliceReport> {
        let step = self.op.degree_step() as i64;
        // Σ over internal degrees q = m·step with p = q - t ≥ 0.
        let band = self.config.normalized && step > 2;
        let m_max = if band {
            // nonempty needs p ≤ 2m, i.e. m (step - 2) ≤ t
            if t < 0 {
                0
            } else {
                (t / (step - 2)) as usize
            }
        } else {
            self.config.max_complexity
        };
        let mut missing = Vec::new();
        let mut entries = Vec::new();
        for m in 0..=m_max {
            let q = m * step as usize;
            let p = q as i64 - t;
            if p < 0 {
                continue;
            }
            let p = p as usize;
            if self.known_empty(p, q) {
                continue;
            }
            match self.homology_rank(p, q) {
                Ok(0) => {}
                Ok(rank) => entries.push(SliceEntry {
                    bidegree: Bidegree::new(p, q),
                    rank,
                }),
                Err(Error::WindowTooSmall { missing: mut v }) => missing.append(&mut v),
                Err(e) => return Err(e),
            }
        }
        if !missing.is_empty() {
            missing.sort_unstable();
            missing.dedup();
            return Err(Error::WindowTooSmall { missing });
        }
        Ok(SliceReport {
            total_degree: t,
            entries,
            complete: band,
        })
    }

    /// Nonzero ranks at every bidegree inside the window whose homology is
    /// computable there.
    pub fn table(&self) -> Result<Vec<SliceEntry>> {
        let step = self.op.degree_step();
        let mut out = Vec::new();
        for m in 0..=self.config.max_complexity {
            let q = m * step;
            for p in 0..=self.config.max_arity {
                if self.known_empty(p, q) {
                    continue;
                }
                match self.homology_rank(p, q) {
                    Ok(0) => {}
                    Ok(rank) => out.push(SliceEntry {
                        bidegree: Bidegree::new(p, q),
                        rank,
                    }),
                    Err(Error::WindowTooSmall { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(out)
    }
}

/// `∂m = Σ (-1)^i d^i m` on a basis monomial of arity `p`, integer coefficients.
pub fn integer_boundary<O: MultiplicativeOperad>(
    op: &O,
    m: &O::Monomial,
    p: usize,
) -> Vec<(O::Monomial, i64)> {
    let mu2 = op.mu(2);
    let mut acc: BTreeMap<O::Monomial, i64> = BTreeMap::new();
    for i in 0..=p + 1 {
        let s = if i % 2 == 0 { 1 } else { -1 };
        let terms = if i == 0 {
            op.compose_basis(&mu2, 2, m)
        } else if i == p + 1 {
            op.compose_basis(&mu2, 1, m)
        } else {
            op.compose_basis(m, i, &mu2)
        };
        for (t, c) in terms {
            *acc.entry(t).or_insert(0) += s * c;
        }
    }
    acc.into_iter().filter(|(_, c)| *c != 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::{hochschild_boundary, monomial};
    use crate::{AssocOperad, PoisOperad, Q};

    fn window(n: usize) -> ComplexWindow<PoisOperad, Q> {
        ComplexWindow::new(
            Arc::new(PoisOperad::new(n).unwrap()),
            WindowConfig::default(),
        )
    }

    #[test]
    fn bidegree_parse_and_display() {
        let b = Bidegree::parse("-5,12").unwrap();
        assert_eq!(b, Bidegree::new(5, 12));
        assert_eq!(b.to_string(), "(-5,12)");
        assert_eq!(b.total(), 7);
        assert!(Bidegree::parse("5").is_err());
    }

    #[test]
    fn integer_boundary_matches_element_boundary() {
        let op = PoisOperad::new(5).unwrap();
        for m in op.basis(3) {
            let x = monomial::<_, Q>(&op, m.clone());
            let want = hochschild_boundary(&op, &x).unwrap();
            let got = Element::from_terms(
                op.key(),
                4,
                integer_boundary(&op, &m, 3)
                    .into_iter()
                    .map(|(t, c)| (t, Q::from_i64(c))),
            );
            assert_eq!(got, want);
        }
    }

    #[test]
    fn normalized_dimensions() {
        let w5 = window(5);
        assert_eq!(w5.basis(4, 8).unwrap().len(), 3);
        assert_eq!(w5.basis(3, 8).unwrap().len(), 2);
        assert_eq!(w5.basis(6, 12).unwrap().len(), 15);
        assert_eq!(w5.basis(5, 12).unwrap().len(), 20);
        assert_eq!(w5.basis(4, 12).unwrap().len(), 6);
        assert!(w5.basis(7, 8).unwrap().is_empty());
    }

    #[test]
    fn low_homology() {
        let w = window(5);
        assert_eq!(w.homology_rank(0, 0).unwrap(), 1);
        assert_eq!(w.homology_rank(2, 4).unwrap(), 1);
        assert_eq!(w.homology_rank(3, 8).unwrap(), 1);
        assert_eq!(w.homology_rank(4, 8).unwrap(), 2);
        assert_eq!(w.homology_rank(1, 0).unwrap(), 0);
    }

    #[test]
    fn window_too_small_names_bidegrees() {
        let w: ComplexWindow<PoisOperad, Q> = ComplexWindow::new(
            Arc::new(PoisOperad::new(5).unwrap()),
            WindowConfig {
                max_arity: 4,
                max_complexity: 4,
                normalized: true,
            },
        );
        match w.homology(4, 12) {
            Err(Error::WindowTooSmall { missing }) => assert_eq!(missing, vec![(-5, 12)]),
            other => panic!("unexpected {:?}", other.map(|h| h.rank())),
        }
    }

    #[test]
    fn assoc_homology_is_the_ground_field() {
        let w: ComplexWindow<AssocOperad, Q> =
            ComplexWindow::new(Arc::new(AssocOperad), WindowConfig::default());
        assert_eq!(w.homology_rank(0, 0).unwrap(), 1);
        assert_eq!(w.homology_rank(3, 0).unwrap(), 0);
        let full: ComplexWindow<AssocOperad, Q> = ComplexWindow::new(
            Arc::new(AssocOperad),
            WindowConfig {
                max_arity: 6,
                max_complexity: 0,
                normalized: false,
            },
        );
        for p in 0..=5 {
            assert_eq!(
                full.homology_rank(p, 0).unwrap(),
                (p == 0) as usize,
                "p={}",
                p
            );
        }
    }

    #[test]
    fn disk_cache_reused() {
        let tmp = tempfile::tempdir().unwrap();
        let op = Arc::new(PoisOperad::new(5).unwrap());
        let w: ComplexWindow<PoisOperad, Q> =
            ComplexWindow::new(op.clone(), WindowConfig::default())
                .with_cache_dir(tmp.path())
                .unwrap();
        let r = w.homology_rank(4, 8).unwrap();
        let again: ComplexWindow<PoisOperad, Q> = ComplexWindow::new(op, WindowConfig::default())
            .with_cache_dir(tmp.path())
            .unwrap();
        assert!(again.cache.as_ref().unwrap().load(4, 8).is_some());
        assert_eq!(again.homology_rank(4, 8).unwrap(), r);
    }
}
