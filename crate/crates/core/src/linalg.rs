//! Exact linear algebra over a [`Scalar`] field.
//!
//! Ranks use fraction-free sparse elimination: rows are bucketed by their
//! leading column, the shortest row of a bucket becomes the pivot and the
//! others are updated as `p·row - a·pivot`, then rescaled with
//! [`Scalar::normalize_row`]. Kernels and solves use a dense reduced echelon
//! form with field division; the matrices met here are small.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type SparseRow<F> = Vec<(usize, F)>;

/// Row-major sparse matrix; each row sorted by column with no zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<F> {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseRow<F>>,
}

impl<F: Scalar> SparseMatrix<F> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn from_dense(nrows: usize, ncols: usize, dense: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(nrows, ncols);
        for (i, r) in dense.iter().enumerate() {
            m.rows[i] = sparse_of(r);
        }
        m
    }

    /// Matrix whose `j`-th column is `cols[j]` (each of length `nrows`).
    pub fn from_columns(nrows: usize, cols: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                if !v.is_zero() {
                    m.rows[i].push((j, v.clone()));
                }
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[(usize, F)] {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        let mut d = vec![vec![F::zero(); self.ncols]; self.nrows];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                d[i][*j] = v.clone();
            }
        }
        d
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows);
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                t.rows[*j].push((i, v.clone()));
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.ncols {
            return Err(Error::Argument(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.ncols
            )));
        }
        Ok(self
            .rows
            .iter()
            .map(|r| {
                let mut acc = F::zero();
                for (j, a) in r {
                    if !v[*j].is_zero() {
                        acc += a.clone() * v[*j].clone();
                    }
                }
                acc
            })
            .collect())
    }

    /// Product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ncols != other.nrows {
            return Err(Error::Argument(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let mut out = Self::zeros(self.nrows, other.ncols);
        for (i, r) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, F> = BTreeMap::new();
            for (k, a) in r {
                for (j, b) in &other.rows[*k] {
                    let e = acc.entry(*j).or_insert_with(F::zero);
                    *e += a.clone() * b.clone();
                }
            }
            out.rows[i] = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn rank(&self) -> usize {
        echelon_rows(self.rows.clone()).len()
    }

    /// Basis of the null space `{v : self·v = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let mut d = self.to_dense();
        let pivots = rref(&mut d);
        let free: Vec<usize> = (0..self.ncols).filter(|j| !pivots.contains(j)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.ncols];
                v[f] = F::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -d[r][f].clone();
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self·x = b`, if one exists.
    pub fn solve(&self, b: &[F]) -> Result<Option<Vec<F>>> {
        if b.len() != self.nrows {
            return Err(Error::Argument(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.nrows
            )));
        }
        let mut aug: Vec<Vec<F>> = self
            .to_dense()
            .into_iter()
            .zip(b)
            .map(|(mut r, v)| {
                r.push(v.clone());
                r
            })
            .collect();
        let pivots = rref(&mut aug);
        if pivots.last() == Some(&self.ncols) {
            return Ok(None);
        }
        let mut x = vec![F::zero(); self.ncols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[r][self.ncols].clone();
        }
        Ok(Some(x))
    }
}

pub fn sparse_of<F: Scalar>(v: &[F]) -> SparseRow<F> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(j, x)| (j, x.clone()))
        .collect()
}

fn normalize_sparse<F: Scalar>(row: &mut SparseRow<F>) {
    let mut vals: Vec<F> = row.iter().map(|(_, v)| v.clone()).collect();
    F::normalize_row(&mut vals);
    for ((_, v), n) in row.iter_mut().zip(vals) {
        *v = n;
    }
}

/// `p·row - a·pivot` where `p`, `a` are the leading entries; the leading
/// column cancels and is dropped.
fn eliminate<F: Scalar>(row: &SparseRow<F>, pivot: &SparseRow<F>) -> SparseRow<F> {
    let p = pivot[0].1.clone();
    let a = row[0].1.clone();
    let (mut i, mut j) = (1, 1);
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|x| x.0).unwrap_or(usize::MAX);
        let cj = pivot.get(j).map(|x| x.0).unwrap_or(usize::MAX);
        let (col, v) = if ci < cj {
            i += 1;
            (ci, p.clone() * row[i - 1].1.clone())
        } else if cj < ci {
            j += 1;
            (cj, -(a.clone() * pivot[j - 1].1.clone()))
        } else {
            i += 1;
            j += 1;
            (
                ci,
                p.clone() * row[i - 1].1.clone() - a.clone() * pivot[j - 1].1.clone(),
            )
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    out
}

/// An echelon basis of the span of `rows`, by fraction-free elimination.
pub fn echelon_rows<F: Scalar>(rows: Vec<SparseRow<F>>) -> Vec<SparseRow<F>> {
    let mut buckets: BTreeMap<usize, Vec<SparseRow<F>>> = BTreeMap::new();
    for mut r in rows.into_iter().filter(|r| !r.is_empty()) {
        normalize_sparse(&mut r);
        buckets.entry(r[0].0).or_default().push(r);
    }
    let mut out = Vec::new();
    while let Some((_, mut bucket)) = buckets.pop_first() {
        let k = (0..bucket.len())
            .min_by_key(|&k| (bucket[k].len(), k))
            .expect("buckets are never empty");
        let pivot = bucket.remove(k);
        for r in bucket {
            let mut e = eliminate(&r, &pivot);
            if !e.is_empty() {
                normalize_sparse(&mut e);
                buckets.entry(e[0].0).or_default().push(e);
            }
        }
        out.push(pivot);
    }
    out
}

/// A subspace held as sparse echelon rows keyed by leading column.
#[derive(Clone, Debug)]
pub struct EchelonSpan<F> {
    rows: BTreeMap<usize, SparseRow<F>>,
}

impl<F: Scalar> EchelonSpan<F> {
    pub fn from_rows(rows: Vec<SparseRow<F>>) -> Self {
        EchelonSpan {
            rows: echelon_rows(rows)
                .into_iter()
                .map(|r| (r[0].0, r))
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after eliminating leading entries against the span;
    /// empty exactly when `v` lies in the span.
    pub fn reduce(&self, v: SparseRow<F>) -> SparseRow<F> {
        let mut v: SparseRow<F> = v.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        v.sort_by_key(|(j, _)| *j);
        while let Some(&(lead, _)) = v.first() {
            match self.rows.get(&lead) {
                Some(r) => {
                    v = eliminate(&v, r);
                    normalize_sparse(&mut v);
                }
                None => break,
            }
        }
        v
    }

    pub fn contains(&self, v: SparseRow<F>) -> bool {
        self.reduce(v).is_empty()
    }
}

/// In-place reduced row echelon form; returns the pivot columns.
pub fn rref<F: Scalar>(m: &mut [Vec<F>]) -> Vec<usize> {
    let nrows = m.len();
    let ncols = m.first().map(Vec::len).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(k) = (r..nrows).find(|&k| !m[k][c].is_zero()) else {
            continue;
        };
        m.swap(r, k);
        let inv = F::one() / m[r][c].clone();
        for v in m[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        let pivot = m[r][c..ncols].to_vec();
        for (k, row) in m.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (dst, src) in row[c..ncols].iter_mut().zip(&pivot) {
                    *dst -= f.clone() * src.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Determinant of a square matrix by Gaussian elimination.
pub fn determinant<F: Scalar>(mut m: Vec<Vec<F>>) -> Result<F> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Argument("determinant of a non-square matrix".into()));
    }
    let mut det = F::one();
    for c in 0..n {
        let Some(k) = (c..n).find(|&k| !m[k][c].is_zero()) else {
            return Ok(F::zero());
        };
        if k != c {
            m.swap(k, c);
            det = -det;
        }
        let p = m[c][c].clone();
        det *= p.clone();
        let pivot = m[c][c..].to_vec();
        for row in m[c + 1..].iter_mut() {
            if !row[c].is_zero() {
                let f = row[c].clone() / p.clone();
                for (dst, src) in row[c..].iter_mut().zip(&pivot) {
                    *dst -= f.clone() * src.clone();
                }
            }
        }
    }
    Ok(det)
}

/// Incrementally grown echelon basis with leading ones.
#[derive(Clone, Debug)]
struct Echelon<F> {
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Scalar> Echelon<F> {
    fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut v = v.to_vec();
        for (pc, r) in &self.rows {
            if !v[*pc].is_zero() {
                let f = v[*pc].clone();
                for (x, y) in v.iter_mut().zip(r) {
                    if !y.is_zero() {
                        *x -= f.clone() * y.clone();
                    }
                }
            }
        }
        v
    }

    /// Adds `v` if it is independent; returns whether it was added.
    fn insert(&mut self, v: &[F]) -> bool {
        let mut r = self.reduce(v);
        let Some(pc) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = F::one() / r[pc].clone();
        for x in r.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        self.rows.push((pc, r));
        true
    }
}

/// `ker(outgoing) / im(incoming)` with chosen representatives.
#[derive(Clone, Debug)]
pub struct QuotientPresentation<F> {
    pub ambient_dim: usize,
    /// Basis of the boundaries.
    pub boundaries: Vec<Vec<F>>,
    /// Cycles whose classes form a basis of the quotient.
    pub representatives: Vec<Vec<F>>,
    outgoing: Option<SparseMatrix<F>>,
}

impl<F: Scalar> QuotientPresentation<F> {
    /// `incoming : C' → C` (rows = `ambient_dim`), `outgoing : C → C''`
    /// (cols = `ambient_dim`); either may be absent (zero map).
    pub fn new(
        ambient_dim: usize,
        incoming: Option<&SparseMatrix<F>>,
        outgoing: Option<&SparseMatrix<F>>,
    ) -> Result<Self> {
        if let Some(m) = incoming {
            if m.nrows() != ambient_dim {
                return Err(Error::Argument("incoming map has the wrong target".into()));
            }
        }
        if let Some(m) = outgoing {
            if m.ncols() != ambient_dim {
                return Err(Error::Argument("outgoing map has the wrong source".into()));
            }
        }
        let cycles = match outgoing {
            Some(m) => m.kernel_basis(),
            None => (0..ambient_dim)
                .map(|k| {
                    let mut v = vec![F::zero(); ambient_dim];
                    v[k] = F::one();
                    v
                })
                .collect(),
        };
        let boundaries: Vec<Vec<F>> = match incoming {
            Some(m) => echelon_rows(m.transpose().rows)
                .into_iter()
                .map(|r| densify(&r, ambient_dim))
                .collect(),
            None => Vec::new(),
        };
        let mut span = Echelon::new();
        for b in &boundaries {
            span.insert(b);
        }
        let mut representatives = Vec::new();
        for z in cycles {
            if span.insert(&z) {
                representatives.push(z);
            }
        }
        Ok(QuotientPresentation {
            ambient_dim,
            boundaries,
            representatives,
            outgoing: outgoing.cloned(),
        })
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of the class of the cycle `v` in the representative basis.
    pub fn reduce(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.ambient_dim {
            return Err(Error::Argument(format!(
                "vector of length {} in a space of dimension {}",
                v.len(),
                self.ambient_dim
            )));
        }
        if let Some(m) = &self.outgoing {
            if m.mul_vec(v)?.iter().any(|x| !x.is_zero()) {
                return Err(Error::ContractViolation(
                    "vector is not a cycle".to_string(),
                ));
            }
        }
        let cols: Vec<Vec<F>> = self
            .boundaries
            .iter()
            .chain(self.representatives.iter())
            .cloned()
            .collect();
        let a = SparseMatrix::from_columns(self.ambient_dim, &cols);
        let c = a.solve(v)?.ok_or_else(|| {
            Error::ContractViolation(
                "cycle outside the span of boundaries and representatives".into(),
            )
        })?;
        Ok(c[self.boundaries.len()..].to_vec())
    }
}

pub fn densify<F: Scalar>(r: &[(usize, F)], dim: usize) -> Vec<F> {
    let mut v = vec![F::zero(); dim];
    for (j, x) in r {
        v[*j] = x.clone();
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{F32003, Q};
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    fn qm(rows: &[&[i64]]) -> SparseMatrix<Q> {
        let d: Vec<Vec<Q>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| q(v)).collect())
            .collect();
        SparseMatrix::from_dense(d.len(), d[0].len(), &d)
    }

    #[test]
    fn rank_and_kernel() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).unwrap().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = qm(&[&[1, 1], &[1, -1]]);
        let x = m.solve(&[q(3), q(1)]).unwrap().unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
        let s = qm(&[&[1, 1], &[2, 2]]);
        assert!(s.solve(&[q(1), q(3)]).unwrap().is_none());
    }

    #[test]
    fn determinant_small() {
        let d = determinant(vec![vec![q(0), q(2)], vec![q(3), q(1)]]).unwrap();
        assert_eq!(d, q(-6));
        assert!(determinant(vec![vec![q(1), q(2)]]).is_err());
    }

    #[test]
    fn ranks_agree_across_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..6 {
            let n = 40;
            // planted rank: product of 40xk and kx40 integer matrices
            let k = 10 + 5 * trial;
            let a: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..k).map(|_| rng.gen_range(-3..=3)).collect())
                .collect();
            let b: Vec<Vec<i64>> = (0..k)
                .map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect())
                .collect();
            let prod: Vec<Vec<i64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum())
                        .collect()
                })
                .collect();
            let mq: Vec<Vec<Q>> = prod
                .iter()
                .map(|r| r.iter().map(|&v| q(v)).collect())
                .collect();
            let mp: Vec<Vec<F32003>> = prod
                .iter()
                .map(|r| r.iter().map(|&v| F32003::new(v)).collect())
                .collect();
            let rq = SparseMatrix::from_dense(n, n, &mq).rank();
            let rp = SparseMatrix::from_dense(n, n, &mp).rank();
            let mut dense = mq.clone();
            let rd = rref(&mut dense).len();
            assert_eq!(rq, rd);
            assert_eq!(rq, rp);
            assert!(rq <= k);
        }
    }

    #[test]
    fn homology_of_a_small_complex() {
        // C0 = Q --0--> C1 = Q^2 --[1 1]--> C2 = Q ; H1 = 1
        let out = qm(&[&[1, 1]]);
        let h = QuotientPresentation::new(2, None, Some(&out)).unwrap();
        assert_eq!(h.dim(), 1);
        let r = h.reduce(&[q(3), q(-3)]).unwrap();
        assert_eq!(r.len(), 1);
        assert!(matches!(
            h.reduce(&[q(1), q(0)]),
            Err(Error::ContractViolation(_))
        ));
        // boundaries kill everything
        let inc = SparseMatrix::from_columns(2, &[vec![q(1), q(-1)]]);
        let h = QuotientPresentation::new(2, Some(&inc), Some(&out)).unwrap();
        assert_eq!(h.dim(), 0);
        assert!(h.reduce(&[q(2), q(-2)]).unwrap().is_empty());
    }
}
