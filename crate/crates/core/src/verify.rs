//! Property sweeps shared by the command line and the acceptance tests.

use std::sync::Arc;

use serde::Serialize;

use crate::chord::{concat_descends, dim_a, four_term_relators, relation_span};
use crate::error::{Error, Result};
use crate::gerstenhaber::{
    basis_classes, bracket_classes, cup_classes, cup_product, psi_bracket, total_degree,
    HomologyClass,
};
use crate::hochschild::{Bidegree, ComplexWindow, WindowConfig};
use crate::knot::KnotContext;
use crate::operad::{
    hochschild_boundary, monomial, mu, verify_cosimplicial, verify_operad_axioms,
    verify_operad_axioms_sampled, ElementOf, MultiplicativeOperad,
};
use crate::pois::{PoisMonomial, PoisOperad};
use crate::scalar::Scalar;
use crate::signs::{resolve_printed_exponents, SignsReport, SweepConfig};

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub checks: usize,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: impl Into<String>) -> Self {
        CheckOutcome {
            name: name.into(),
            passed: true,
            checks: 0,
            detail: String::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.passed {
            self.passed = false;
            self.detail = what();
        }
    }

    fn note(mut self, detail: impl Into<String>) -> Self {
        if self.passed {
            self.detail = detail.into();
        }
        self
    }
}

/// Unsigned Stirling numbers of the first kind `c(p, k)`.
pub fn stirling_first(p: usize, k: usize) -> u64 {
    let mut row = vec![1u64];
    for i in 0..p {
        let mut next = vec![0u64; row.len() + 1];
        for (j, &v) in row.iter().enumerate() {
            next[j + 1] += v;
            next[j] += v * i as u64;
        }
        row = next;
    }
    row.get(k).copied().unwrap_or(0)
}

/// `dim Pois_n(p) = p!` and the graded pieces are `c(p, p-m)`.
pub fn basis_sanity(n: usize, max_arity: usize) -> Result<CheckOutcome> {
    let op = PoisOperad::new(n)?;
    let mut out = CheckOutcome::new(format!("basis dimensions n={}", n));
    for p in 0..=max_arity {
        let total = op.basis(p).len() as u64;
        let fact: u64 = (1..=p as u64).product();
        out.record(total == fact, || {
            format!("dim Pois_{}({}) = {} != {}!", n, p, total, p)
        });
        for m in 0..p.max(1) {
            let dim = op.basis_in_degree(p, m * op.bracket_degree()).len() as u64;
            let want = stirling_first(p, p - m);
            out.record(dim == want, || {
                format!(
                    "p={} m={}: dim {} != c({},{}) = {}",
                    p,
                    m,
                    dim,
                    p,
                    p - m,
                    want
                )
            });
        }
    }
    Ok(out.note(format!("arity <= {}", max_arity)))
}

pub fn cosimplicial<F: Scalar>(n: usize, max_arity: usize, seed: u64) -> Result<CheckOutcome> {
    let op = PoisOperad::new(n)?;
    let r = verify_cosimplicial::<_, F>(&op, max_arity, seed)?;
    Ok(CheckOutcome {
        name: format!("cosimplicial identities n={}", n),
        passed: r.passed,
        checks: r.checks,
        detail: r
            .first_failure
            .unwrap_or_else(|| format!("arity <= {}", max_arity)),
    })
}

/// Bounds for [`operad_axioms`].
#[derive(Clone, Copy, Debug, Serialize)]
pub struct AxiomSweep {
    /// Every triple of basis monomials of at most this arity...
    pub exhaustive_arity: usize,
    /// ...whose full composite has at most this arity.
    pub exhaustive_composite: usize,
    /// Random homogeneous triples of at most this arity...
    pub sampled_arity: usize,
    /// ...whose full composite has at most this arity.
    pub max_composite: usize,
    pub samples: usize,
}

impl Default for AxiomSweep {
    fn default() -> Self {
        AxiomSweep {
            exhaustive_arity: 4,
            exhaustive_composite: 7,
            sampled_arity: 4,
            max_composite: 8,
            samples: 30,
        }
    }
}

pub fn operad_axioms<F: Scalar>(n: usize, sweep: AxiomSweep) -> Result<CheckOutcome> {
    let AxiomSweep {
        exhaustive_arity,
        exhaustive_composite,
        sampled_arity,
        max_composite,
        samples,
    } = sweep;
    let op = PoisOperad::new(n)?;
    let a = verify_operad_axioms::<_, F>(&op, exhaustive_arity, exhaustive_composite)?;
    let b = verify_operad_axioms_sampled::<_, F>(&op, sampled_arity, max_composite, samples, 11)?;
    let detail = a.first_failure.or(b.first_failure).unwrap_or_else(|| {
        format!(
            "basis triples of arity <= {} composing to arity <= {}; {} random triples of arity <= {} composing to arity <= {}",
            exhaustive_arity, exhaustive_composite, samples, sampled_arity, max_composite
        )
    });
    Ok(CheckOutcome {
        name: format!("operad axioms n={}", n),
        passed: a.passed && b.passed,
        checks: a.checks + b.checks,
        detail,
    })
}

/// `∂∂x = 0` for every basis monomial of arity `≤ max_arity` in the full
/// complex.
pub fn boundary_squares_on_basis<F: Scalar>(n: usize, max_arity: usize) -> Result<CheckOutcome> {
    let op = PoisOperad::new(n)?;
    let mut out = CheckOutcome::new(format!("∂∂ = 0 on basis monomials n={}", n));
    for p in 0..=max_arity {
        for m in op.basis(p) {
            let x = monomial::<_, F>(&op, m.clone());
            let dd = hochschild_boundary(&op, &hochschild_boundary(&op, &x)?)?;
            out.record(dd.is_zero(), || format!("∂∂{} != 0", m));
        }
    }
    Ok(out.note(format!("arity <= {}", max_arity)))
}

/// `∂∂ = 0` as a matrix identity on every block of the window.
pub fn boundary_squares_to_zero<O: MultiplicativeOperad, F: Scalar>(
    w: &ComplexWindow<O, F>,
) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(format!("boundary squares to zero ({})", w.operad().name()));
    let cfg = w.config();
    let step = w.operad().degree_step();
    for m in 0..=cfg.max_complexity {
        let q = m * step;
        for p in 0..cfg.max_arity.saturating_sub(1) {
            let d1 = w.boundary(p, q)?;
            if d1.ncols() == 0 || d1.nrows() == 0 {
                continue;
            }
            let d2 = w.boundary(p + 1, q)?;
            if d2.nrows() == 0 {
                continue;
            }
            let ok = d2.mul(&d1)?.is_zero();
            out.record(ok, || format!("∂∂ != 0 from {}", Bidegree::new(p, q)));
        }
    }
    Ok(out.note(format!("window p <= {}", cfg.max_arity)))
}

/// Normalized and full complexes have the same homology for `p ≤ max_p`.
pub fn normalization_oracle<F: Scalar>(n: usize, max_p: usize) -> Result<CheckOutcome> {
    let op = Arc::new(PoisOperad::new(n)?);
    let d = op.bracket_degree();
    let norm: ComplexWindow<PoisOperad, F> = ComplexWindow::new(
        op.clone(),
        WindowConfig {
            max_arity: max_p + 1,
            max_complexity: max_p,
            normalized: true,
        },
    );
    let full: ComplexWindow<PoisOperad, F> = ComplexWindow::new(
        op,
        WindowConfig {
            max_arity: max_p + 1,
            max_complexity: max_p,
            normalized: false,
        },
    );
    let mut out = CheckOutcome::new(format!("normalized vs full homology n={}", n));
    let mut nonzero = Vec::new();
    for p in 0..=max_p {
        for m in 0..=max_p {
            let q = m * d;
            let a = norm.homology_rank(p, q)?;
            let b = full.homology_rank(p, q)?;
            if a > 0 {
                nonzero.push(format!("{}:{}", Bidegree::new(p, q), a));
            }
            out.record(a == b, || {
                format!("{}: normalized {} vs full {}", Bidegree::new(p, q), a, b)
            });
        }
    }
    Ok(out.note(format!("p <= {}; nonzero {}", max_p, nonzero.join(" "))))
}

fn normalized_basis_upto(op: &PoisOperad, max_p: usize) -> Vec<PoisMonomial> {
    let d = op.bracket_degree();
    (0..=max_p)
        .flat_map(|p| (0..=p).flat_map(move |m| op.normalized_basis(p, m * d)))
        .collect()
}

/// Chain-level laws: formula antisymmetry, Leibniz for `Ψ` and `∪`, and
/// `Ψ(μ_2, x) = ±∂x`.
pub fn chain_laws<F: Scalar>(n: usize, max_pr: usize) -> Result<Vec<CheckOutcome>> {
    let op = PoisOperad::new(n)?;
    let basis = normalized_basis_upto(&op, max_pr);
    let el = |m: &PoisMonomial| monomial::<_, F>(&op, m.clone());
    let mut anti = CheckOutcome::new(format!("bracket antisymmetry n={}", n));
    let mut leib = CheckOutcome::new(format!("bracket Leibniz n={}", n));
    let mut cup = CheckOutcome::new(format!("cup Leibniz n={}", n));
    for a in &basis {
        for b in &basis {
            let (p, r) = (op.arity(a), op.arity(b));
            if p + r > max_pr || p + r == 0 {
                continue;
            }
            let (x, y) = (el(a), el(b));
            let q = op.degree(a) as i64 - p as i64;
            let s = op.degree(b) as i64 - r as i64;
            let xy = psi_bracket(&op, &x, &y)?;
            let yx = psi_bracket(&op, &y, &x)?;
            anti.record(xy == yx.scale(&-F::sign((q + 1) * (s + 1))), || {
                format!("Ψ({},{}) antisymmetry", a, b)
            });
            let dx = hochschild_boundary(&op, &x)?;
            let dy = hochschild_boundary(&op, &y)?;
            let lhs = hochschild_boundary(&op, &xy)?;
            let mut rhs = psi_bracket(&op, &dx, &y)?.scale(&F::sign(op.degree(b) as i64));
            rhs.axpy(&F::sign(p as i64 + 1), &psi_bracket(&op, &x, &dy)?)?;
            leib.record(lhs == rhs, || format!("∂Ψ({},{})", a, b));
            let lhs = hochschild_boundary(&op, &cup_product(&op, &x, &y)?)?;
            let mut rhs = cup_product(&op, &dx, &y)?.scale(&F::sign(s));
            rhs.axpy(&F::one(), &cup_product(&op, &x, &dy)?)?;
            cup.record(lhs == rhs, || format!("∂({}∪{})", a, b));
        }
    }
    let mut mu2 = CheckOutcome::new(format!("Ψ(μ2, x) = ±∂x n={}", n));
    let m2 = mu::<_, F>(&op, 2);
    let mut signs = std::collections::BTreeMap::new();
    for a in normalized_basis_upto(&op, 4) {
        let x = el(&a);
        let dx = hochschild_boundary(&op, &x)?;
        let b = psi_bracket(&op, &m2, &x)?;
        let key = (op.arity(&a), op.degree(&a));
        let sign = if b == dx {
            1
        } else if b == dx.neg() {
            -1
        } else {
            0
        };
        let prev = *signs.entry(key).or_insert(sign);
        mu2.record(sign != 0 && prev == sign, || format!("Ψ(μ2,{}) vs ∂", a));
    }
    let table: Vec<String> = signs
        .iter()
        .map(|((p, d), s)| format!("(p={},deg={}):{}", p, d, if *s > 0 { "+" } else { "-" }))
        .collect();
    let mu2 = mu2.note(table.join(" "));
    let scope = format!("normalized basis pairs with p + r <= {}", max_pr);
    Ok(vec![
        anti.note(scope.clone()),
        leib.note(scope.clone()),
        cup.note(scope),
        mu2,
    ])
}

type Class<F> = HomologyClass<PoisMonomial, F>;

/// Homology basis classes of total degree `≤ max_total` inside the window.
pub fn homology_basis_classes<F: Scalar>(
    w: &ComplexWindow<PoisOperad, F>,
    max_total: i64,
) -> Result<Vec<Class<F>>> {
    let mut out = Vec::new();
    for e in w.table()? {
        if e.bidegree.total() <= max_total {
            out.extend(basis_classes(w, e.bidegree.p, e.bidegree.q)?);
        }
    }
    Ok(out)
}

fn within<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::WindowTooSmall { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Graded commutativity of `∪`, Jacobi for `Ψ` and the Poisson rule on all
/// triples of basis classes whose results fit in the window.
pub fn homology_laws<F: Scalar>(
    w: &ComplexWindow<PoisOperad, F>,
    max_total: i64,
) -> Result<Vec<CheckOutcome>> {
    let n = w.operad().n();
    let classes = homology_basis_classes(w, max_total)?;
    let mut comm = CheckOutcome::new(format!("cup commutativity n={}", n));
    let mut jac = CheckOutcome::new(format!("Jacobi n={}", n));
    let mut poi = CheckOutcome::new(format!("Poisson rule n={}", n));
    for a in &classes {
        let q = a.total_degree();
        for b in &classes {
            let s = b.total_degree();
            if let (Some(ab), Some(ba)) =
                (within(cup_classes(w, a, b))?, within(cup_classes(w, b, a))?)
            {
                comm.record(ab.same_class(&ba.scale(&F::sign(q * s))), || {
                    format!("{} ∪ {}", a.bidegree, b.bidegree)
                });
            }
            for c in &classes {
                let jacobi = (|| -> Result<bool> {
                    let l = bracket_classes(w, a, &bracket_classes(w, b, c)?)?;
                    let r1 = bracket_classes(w, &bracket_classes(w, a, b)?, c)?;
                    let r2 = bracket_classes(w, b, &bracket_classes(w, a, c)?)?;
                    Ok(l.same_class(&r1.try_add(&r2.scale(&F::sign((q + 1) * (s + 1))))?))
                })();
                if let Some(ok) = within(jacobi)? {
                    jac.record(ok, || {
                        format!("Jacobi on {} {} {}", a.bidegree, b.bidegree, c.bidegree)
                    });
                }
                let poisson = (|| -> Result<bool> {
                    let l = bracket_classes(w, a, &cup_classes(w, b, c)?)?;
                    let r1 = cup_classes(w, &bracket_classes(w, a, b)?, c)?;
                    let r2 = cup_classes(w, b, &bracket_classes(w, a, c)?)?;
                    Ok(l.same_class(&r1.try_add(&r2.scale(&F::sign((q + 1) * s)))?))
                })();
                if let Some(ok) = within(poisson)? {
                    poi.record(ok, || {
                        format!("Poisson on {} {} {}", a.bidegree, b.bidegree, c.bidegree)
                    });
                }
            }
        }
    }
    let note = format!(
        "{} basis classes of total degree <= {}",
        classes.len(),
        max_total
    );
    Ok(vec![
        comm.note(note.clone()),
        jac.note(note.clone()),
        poi.note(note),
    ])
}

/// Rank of a list of coordinate vectors.
fn rank_of<F: Scalar>(vs: &[Vec<F>]) -> usize {
    let cols = vs.first().map(Vec::len).unwrap_or(0);
    let m = crate::linalg::SparseMatrix::from_dense(vs.len(), cols, vs);
    m.rank()
}

/// The rank statements and bracket statements for the knot spectral
/// sequence in dimension `n` (5 or 6).
pub fn knot_statements<F: Scalar>(ctx: &KnotContext<F>) -> Result<Vec<CheckOutcome>> {
    let n = ctx.n();
    let w = ctx.window();
    let d = n - 1;
    let mut out = Vec::new();

    let slice_degree = 3 * n as i64 - 8;
    let want = if n % 2 == 1 { 2 } else { 1 };
    let slice = w.total_degree_slice(slice_degree)?;
    let total: usize = slice.entries.iter().map(|e| e.rank).sum();
    let mut c = CheckOutcome::new(format!(
        "slice rank in total degree {} n={}",
        slice_degree, n
    ));
    c.record(total == want, || format!("rank {} != {}", total, want));
    let parts: Vec<String> = slice
        .entries
        .iter()
        .map(|e| format!("{}:{}", e.bidegree, e.rank))
        .collect();
    out.push(c.note(parts.join(" ")));

    let iota = ctx.class_iota()?;
    let mut c = CheckOutcome::new(format!("named classes n={}", n));
    let r_iota = w.homology_rank(2, d)?;
    c.record(r_iota == 1, || format!("rank at (-2,{}) is {}", d, r_iota));
    let r_v2 = w.homology_rank(4, 2 * d)?;
    c.record(r_v2 == want, || {
        format!("rank at (-4,{}) is {}", 2 * d, r_v2)
    });
    let dio = hochschild_boundary(w.operad().as_ref(), &iota.representative)?;
    c.record(dio.is_zero(), || "∂ι != 0".to_string());
    out.push(c.note(format!(
        "rank(-2,{}) = {}, rank(-4,{}) = {}",
        d,
        r_iota,
        2 * d,
        r_v2
    )));

    let psi_ii = bracket_classes(w, &iota, &iota)?;
    let v2 = ctx.class_v2()?;
    if n % 2 == 1 {
        let mut c = CheckOutcome::new(format!("bracket statements n={}", n));
        c.record(!psi_ii.is_zero(), || "Ψ(ι,ι) = 0 in homology".to_string());
        let a = cup_classes(w, &iota, &psi_ii)?;
        let sq = ctx.iota_squared()?;
        let mut spans = Vec::new();
        for shift in [0i64, 1, -2, 3] {
            let v = v2.try_add(&sq.scale(&F::from_i64(shift)))?;
            let b = bracket_classes(w, &iota, &v)?;
            let ok = a.bidegree == b.bidegree
                && a.bidegree.total() == slice_degree
                && rank_of(&[a.coordinates.clone(), b.coordinates.clone()]) == 2
                && w.homology_rank(a.bidegree.p, a.bidegree.q)? == 2;
            spans.push(ok);
            c.record(ok, || {
                format!("ι∪Ψ(ι,ι), Ψ(ι,v2+{}ι∪ι) do not span the slice", shift)
            });
        }
        out.push(c.note(format!(
            "Ψ(ι,ι) at {}; ι∪Ψ(ι,ι) and Ψ(ι,v2) span {}",
            psi_ii.bidegree, a.bidegree
        )));
    } else {
        let mut c = CheckOutcome::new(format!("ι is central n={}", n));
        c.record(psi_ii.is_zero(), || "Ψ(ι,ι) != 0".to_string());
        let bound = 2 * n as i64 - 6;
        let classes = homology_basis_classes(w, bound)?;
        for cl in &classes {
            let b = bracket_classes(w, &iota, cl)?;
            c.record(b.is_zero(), || {
                format!("Ψ(ι, class at {}) != 0", cl.bidegree)
            });
        }
        let b = bracket_classes(w, &iota, &v2)?;
        c.record(b.is_zero(), || "Ψ(ι,v2) != 0".to_string());
        out.push(c.note(format!(
            "{} classes of total degree <= {}",
            classes.len(),
            bound
        )));
    }
    Ok(out)
}

pub fn signs(cfg: &SweepConfig) -> Result<(CheckOutcome, SignsReport)> {
    let r = resolve_printed_exponents(cfg)?;
    let mut c = CheckOutcome::new("simplex chart signs");
    c.checks = r.cells_checked;
    c.passed = r.passed;
    let failing: Vec<String> = r
        .positive
        .iter()
        .chain(&r.negative_lhs)
        .chain(&r.negative_rhs)
        .filter(|v| !v.matches_everywhere)
        .map(|v| {
            format!(
                "{} ({}/{} mismatches{})",
                v.expression,
                v.mismatches,
                v.checked,
                if v.off_by_global_sign {
                    ", global sign"
                } else {
                    ""
                }
            )
        })
        .collect();
    c.detail = format!(
        "positive cells match: {}; negative cells match {}: {}; non-matching readings: {}",
        r.positive.iter().all(|v| v.matches_everywhere),
        r.negative_observed.expression,
        r.negative_observed.matches_everywhere,
        failing.join("; ")
    );
    Ok((c, r))
}

pub fn chord_diagrams<F: Scalar>(max_k: usize, descent_total: usize) -> Result<CheckOutcome> {
    let mut c = CheckOutcome::new("chord diagram algebra");
    let dims: Vec<usize> = (0..=max_k).map(dim_a::<F>).collect::<Result<_>>()?;
    let want = [1usize, 0, 1, 1, 3, 4, 9];
    for (k, &d) in dims.iter().enumerate() {
        c.record(d == want[k], || {
            format!("dim A_{} = {} != {}", k, d, want[k])
        });
    }
    for k in 2..=max_k.min(4) {
        let rs = relation_span::<F>(k)?;
        for r in four_term_relators(k)? {
            c.record(rs.contains(&r), || {
                format!("4T relator outside span in degree {}", k)
            });
        }
    }
    for k1 in 1..descent_total {
        for k2 in 0..=descent_total - k1 {
            match concat_descends::<F>(k1, k2)? {
                Ok(n) => c.checks += n,
                Err(msg) => c.record(false, || msg),
            }
        }
    }
    let dims_s: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
    Ok(c.note(format!("dim A_k = {}", dims_s.join(","))))
}

/// Total degree of a homogeneous element, for reports.
pub fn element_total_degree<F: Scalar>(
    op: &PoisOperad,
    x: &ElementOf<PoisOperad, F>,
) -> Result<Option<i64>> {
    total_degree(op, x)
}
