//! Orientation signs of the piecewise-affine charts on `Δ¹ × Δ^l`.
//!
//! A point is `(τ, t)` with `τ ∈ (-1, 1)` and `-1 ≤ t_1 ≤ … ≤ t_l ≤ 1`. For
//! `τ < 0` the index functions `i_0 = min{i : t_{i+1} ≥ τ}`,
//! `i_1 = min{i : t_{i+1} ≥ 1+τ}` (minimum of the empty set is `l`) pick a
//! cell and the chart
//!
//! ```text
//! u_1 = (2t_1+1, …, 2t_{i_0}+1, 1+2τ, 2t_{i_1+1}-1, …, 2t_l-1) ∈ Δ^p
//! u_2 = (2t_{i_0+1}-2τ-1, …, 2t_{i_1}-2τ-1)                   ∈ Δ^r
//! ```
//!
//! with `p = l+i_0-i_1+1`, `r = i_1-i_0`. For `τ > 0` the same with `-τ`,
//! `1-τ` gives `j_0, j_1`, `v_1 ∈ Δ^{j_1-j_0}` and `v_2 ∈ Δ^{l+j_0-j_1+1}`
//! (pure coordinate `1-2τ`). The inner chart `v_1` is `2t+2τ-1`, the affine
//! map carrying `[-τ, 1-τ]` onto `[-1, 1]`.
//!
//! The oracle computes the sign of the Jacobian of
//! `Δ^q × Δ^s × cell → Δ^q × Δ^p × Δ^s × Δ^r` (negative τ) and
//! `→ Δ^s × Δ^r × Δ^q × Δ^p` (positive τ, with `p = j_1-j_0` the arity of
//! the `x` factor) by exact finite differences at random interior points.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::determinant;
use crate::scalar::Scalar;
/// Chart coordinates: exact rationals with order, which the generic field type lacks.
pub type Coord = num_rational::BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CellKind {
    /// `τ ∈ (-1, 0)`, indices `(i_0, i_1)`.
    Negative,
    /// `τ ∈ (0, 1)`, indices `(j_0, j_1)`.
    Positive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cell {
    pub kind: CellKind,
    pub l: usize,
    pub a: usize,
    pub b: usize,
}

impl Cell {
    pub fn new(kind: CellKind, l: usize, a: usize, b: usize) -> Result<Self> {
        if a > b || b > l {
            return Err(Error::Argument(format!(
                "cell indices must satisfy 0 <= {} <= {} <= {}",
                a, b, l
            )));
        }
        Ok(Cell { kind, l, a, b })
    }

    /// Arities `(p, r)` of the `x` and `y` factors.
    pub fn arities(&self) -> (usize, usize) {
        match self.kind {
            CellKind::Negative => (self.l + self.a - self.b + 1, self.b - self.a),
            CellKind::Positive => (self.b - self.a, self.l + self.a - self.b + 1),
        }
    }

    pub fn all(l: usize) -> Vec<Cell> {
        let mut out = Vec::new();
        for kind in [CellKind::Negative, CellKind::Positive] {
            for a in 0..=l {
                for b in a..=l {
                    out.push(Cell { kind, l, a, b });
                }
            }
        }
        out
    }
}

fn two() -> Coord {
    Coord::from_i64(2)
}

fn check_point(tau: &Coord, t: &[Coord]) -> Result<()> {
    let one = Coord::one();
    if t.windows(2).any(|w| w[0] > w[1]) || t.iter().any(|x| x.abs() > one) {
        return Err(Error::Argument("t is not a point of the simplex".into()));
    }
    if tau.is_zero() || tau.abs() >= one {
        return Err(Error::Argument(format!(
            "τ = {} lies on a chart boundary (0 or ±1)",
            tau
        )));
    }
    Ok(())
}

fn first_at_least(t: &[Coord], bound: &Coord) -> usize {
    t.iter().position(|x| x >= bound).unwrap_or(t.len())
}

/// The cell containing `(τ, t)`.
pub fn index_functions(tau: &Coord, t: &[Coord]) -> Result<Cell> {
    check_point(tau, t)?;
    let l = t.len();
    let one = Coord::one();
    if tau.is_negative() {
        let a = first_at_least(t, tau);
        let b = first_at_least(t, &(one + tau.clone()));
        Cell::new(CellKind::Negative, l, a, b)
    } else {
        let a = first_at_least(t, &-tau.clone());
        let b = first_at_least(t, &(one - tau.clone()));
        Cell::new(CellKind::Positive, l, a, b)
    }
}

fn in_simplex(v: &[Coord]) -> bool {
    let one = Coord::one();
    v.windows(2).all(|w| w[0] <= w[1]) && v.iter().all(|x| x.abs() <= one)
}

/// `(u_1, u_2)` for negative τ, `(v_1, v_2)` for positive τ.
pub fn charts(tau: &Coord, t: &[Coord]) -> Result<(Vec<Coord>, Vec<Coord>)> {
    let cell = index_functions(tau, t)?;
    let (a, b) = (cell.a, cell.b);
    let one = Coord::one();
    let lower: Vec<Coord> = t[..a]
        .iter()
        .map(|x| two() * x.clone() + one.clone())
        .collect();
    let upper: Vec<Coord> = t[b..]
        .iter()
        .map(|x| two() * x.clone() - one.clone())
        .collect();
    let (pure, shift) = match cell.kind {
        CellKind::Negative => (one.clone() + two() * tau.clone(), -tau.clone()),
        CellKind::Positive => (one.clone() - two() * tau.clone(), tau.clone()),
    };
    let outer: Vec<Coord> = lower
        .into_iter()
        .chain(std::iter::once(pure))
        .chain(upper)
        .collect();
    let inner: Vec<Coord> = t[a..b]
        .iter()
        .map(|x| two() * (x.clone() + shift.clone()) - one.clone())
        .collect();
    if !in_simplex(&outer) || !in_simplex(&inner) {
        return Err(Error::ContractViolation(format!(
            "chart image leaves the simplex at τ = {}, t = {:?}",
            tau, t
        )));
    }
    Ok(match cell.kind {
        CellKind::Negative => (outer, inner),
        CellKind::Positive => (inner, outer),
    })
}

/// Target coordinates of the full map for fixed `x ∈ Δ^q`, `y ∈ Δ^s`.
fn full_map(x: &[Coord], y: &[Coord], tau: &Coord, t: &[Coord]) -> Result<(Cell, Vec<Coord>)> {
    let cell = index_functions(tau, t)?;
    let (c1, c2) = charts(tau, t)?;
    let mut out = Vec::new();
    match cell.kind {
        CellKind::Negative => {
            out.extend_from_slice(x);
            out.extend(c1);
            out.extend_from_slice(y);
            out.extend(c2);
        }
        CellKind::Positive => {
            out.extend_from_slice(y);
            out.extend(c2);
            out.extend_from_slice(x);
            out.extend(c1);
        }
    }
    Ok((cell, out))
}

/// A random interior point of the cell.
pub fn random_interior_point<R: Rng>(cell: &Cell, rng: &mut R) -> (Coord, Vec<Coord>) {
    const DEN: i64 = 1_000_003;
    let mut draw = |lo: &Coord, hi: &Coord| -> Coord {
        loop {
            let u = Coord::new(rng.gen_range(1..DEN).into(), DEN.into());
            let v = lo.clone() + (hi.clone() - lo.clone()) * u;
            if &v > lo && &v < hi {
                return v;
            }
        }
    };
    let one = Coord::one();
    let tau = match cell.kind {
        CellKind::Negative => draw(&-one.clone(), &Coord::zero()),
        CellKind::Positive => draw(&Coord::zero(), &one),
    };
    let (c0, c1) = match cell.kind {
        CellKind::Negative => (tau.clone(), one.clone() + tau.clone()),
        CellKind::Positive => (-tau.clone(), one.clone() - tau.clone()),
    };
    let mut group = |n: usize, lo: &Coord, hi: &Coord| -> Vec<Coord> {
        let mut v: Vec<Coord> = (0..n).map(|_| draw(lo, hi)).collect();
        v.sort();
        v
    };
    let mut t = group(cell.a, &-one.clone(), &c0);
    t.extend(group(cell.b - cell.a, &c0, &c1));
    t.extend(group(cell.l - cell.b, &c1, &one));
    (tau, t)
}

/// Jacobian sign at one interior point.
pub fn jacobian_sign_at(q: usize, s: usize, tau: &Coord, t: &[Coord]) -> Result<i64> {
    let x: Vec<Coord> = (0..q).map(|_| Coord::zero()).collect();
    let y: Vec<Coord> = (0..s).map(|_| Coord::zero()).collect();
    let (cell, base) = full_map(&x, &y, tau, t)?;
    // every threshold and coordinate stays put under a step below the gap
    let one = Coord::one();
    let mut marks: Vec<Coord> = t.to_vec();
    marks.extend([-one.clone(), one.clone(), tau.clone(), Coord::zero()]);
    match cell.kind {
        CellKind::Negative => marks.extend([one.clone() + tau.clone()]),
        CellKind::Positive => marks.extend([-tau.clone(), one.clone() - tau.clone()]),
    }
    marks.sort();
    let gap = marks
        .windows(2)
        .map(|w| w[1].clone() - w[0].clone())
        .filter(|g| !g.is_zero())
        .min()
        .unwrap_or_else(Coord::one);
    let h = gap * Coord::new(1.into(), 8.into());
    let dim = q + s + 1 + t.len();
    let mut cols: Vec<Vec<Coord>> = Vec::with_capacity(dim);
    for k in 0..dim {
        let (mut x2, mut y2, mut tau2, mut t2) = (x.clone(), y.clone(), tau.clone(), t.to_vec());
        if k < q {
            x2[k] += h.clone();
        } else if k < q + s {
            y2[k - q] += h.clone();
        } else if k == q + s {
            tau2 += h.clone();
        } else {
            t2[k - q - s - 1] += h.clone();
        }
        let (c2, img) = full_map(&x2, &y2, &tau2, &t2)?;
        if c2 != cell {
            return Err(Error::ContractViolation(format!(
                "finite-difference step left the cell {:?}",
                cell
            )));
        }
        cols.push(
            img.iter()
                .zip(&base)
                .map(|(a, b)| (a.clone() - b.clone()) / h.clone())
                .collect(),
        );
    }
    // rows = outputs, columns = inputs
    let m: Vec<Vec<Coord>> = (0..dim)
        .map(|i| (0..dim).map(|j| cols[j][i].clone()).collect())
        .collect();
    let d = determinant(m)?;
    if d.is_zero() {
        return Err(Error::ContractViolation(
            "chart Jacobian is singular".into(),
        ));
    }
    Ok(if d.is_positive() { 1 } else { -1 })
}

/// Sign on a cell, sampled at `points` interior points; errors if it is not
/// constant.
pub fn jacobian_sign(q: usize, s: usize, cell: &Cell, points: usize, seed: u64) -> Result<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sign = None;
    for _ in 0..points.max(1) {
        let (tau, t) = random_interior_point(cell, &mut rng);
        let sg = jacobian_sign_at(q, s, &tau, &t)?;
        match sign {
            None => sign = Some(sg),
            Some(prev) if prev != sg => {
                return Err(Error::ContractViolation(format!(
                    "Jacobian sign is not constant on {:?}",
                    cell
                )))
            }
            _ => {}
        }
    }
    Ok(sign.expect("at least one point"))
}

/// Parameters a closed-form exponent may use.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SignContext {
    pub l: i64,
    pub q: i64,
    pub s: i64,
    pub p: i64,
    pub r: i64,
    pub a: i64,
    pub b: i64,
}

/// A candidate exponent with its printed form.
pub struct Reading {
    pub name: &'static str,
    pub expression: &'static str,
    pub exponent: fn(&SignContext) -> i64,
}

fn parity_sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Readings of the displayed negative-cell sign `1+i_0 (i_1-i_0)(l-i_1)+ps`.
pub fn negative_lhs_readings() -> Vec<Reading> {
    vec![
        Reading {
            name: "sum",
            expression: "1+i0+(i1-i0)(l-i1)+ps",
            exponent: |c| 1 + c.a + (c.b - c.a) * (c.l - c.b) + c.p * c.s,
        },
        Reading {
            name: "product",
            expression: "1+i0(i1-i0)(l-i1)+ps",
            exponent: |c| 1 + c.a * (c.b - c.a) * (c.l - c.b) + c.p * c.s,
        },
        Reading {
            name: "grouped",
            expression: "(1+i0)(i1-i0)(l-i1)+ps",
            exponent: |c| (1 + c.a) * (c.b - c.a) * (c.l - c.b) + c.p * c.s,
        },
    ]
}

/// Readings of the right-hand side containing `(p-1){r+s}`.
pub fn negative_rhs_readings() -> Vec<Reading> {
    vec![
        Reading {
            name: "parenthesized",
            expression: "(p+1)(r+1)+s+1+(r-1)(p-i0-1)+(p-1)(r+s)",
            exponent: |c| {
                (c.p + 1) * (c.r + 1)
                    + c.s
                    + 1
                    + (c.r - 1) * (c.p - c.a - 1)
                    + (c.p - 1) * (c.r + c.s)
            },
        },
        Reading {
            name: "unparenthesized",
            expression: "(p+1)(r+1)+s+1+(r-1)(p-i0-1)+(p-1)r+s",
            exponent: |c| {
                (c.p + 1) * (c.r + 1)
                    + c.s
                    + 1
                    + (c.r - 1) * (c.p - c.a - 1)
                    + (c.p - 1) * c.r
                    + c.s
            },
        },
    ]
}

pub fn positive_lhs() -> Reading {
    Reading {
        name: "positive-lhs",
        expression: "1+j0+(j1-j0)(l-j1)+q(r+s)",
        exponent: |c| 1 + c.a + (c.b - c.a) * (c.l - c.b) + c.q * (c.r + c.s),
    }
}

pub fn positive_rhs() -> Reading {
    Reading {
        name: "positive-rhs",
        expression: "(p+1)(r+1)+qs+q+1+(p-1)(r-j0-1)+(p+q)(r-1)",
        exponent: |c| {
            (c.p + 1) * (c.r + 1)
                + c.q * c.s
                + c.q
                + 1
                + (c.p - 1) * (c.r - c.a - 1)
                + (c.p + c.q) * (c.r - 1)
        },
    }
}

/// The sign the oracle produces on negative cells, for reference.
pub fn negative_observed() -> Reading {
    Reading {
        name: "observed",
        expression: "i0+(i1-i0)(l-i1)+ps",
        exponent: |c| c.a + (c.b - c.a) * (c.l - c.b) + c.p * c.s,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReadingVerdict {
    pub name: String,
    pub expression: String,
    pub checked: usize,
    pub mismatches: usize,
    pub matches_everywhere: bool,
    /// True when the reading is off from the oracle by the same sign on
    /// every cell.
    pub off_by_global_sign: bool,
    pub first_mismatch: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParityComparison {
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepConfig {
    pub max_l: usize,
    pub max_q: usize,
    pub max_s: usize,
    pub points_per_cell: usize,
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_l: 6,
            max_q: 4,
            max_s: 4,
            points_per_cell: 10,
            seed: 2024,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SignsReport {
    pub sweep: SweepConfig,
    pub cells_checked: usize,
    pub signs_constant_on_cells: bool,
    pub positive: Vec<ReadingVerdict>,
    pub negative_lhs: Vec<ReadingVerdict>,
    pub negative_rhs: Vec<ReadingVerdict>,
    pub negative_observed: ReadingVerdict,
    pub parity: Vec<ParityComparison>,
    /// Readings that match the oracle on every cell, per ambiguous exponent.
    pub resolved_lhs: Vec<String>,
    pub resolved_rhs: Vec<String>,
    pub passed: bool,
}

struct Sample {
    cell: Cell,
    ctx: SignContext,
    sign: i64,
}

fn verdict(reading: &Reading, samples: &[&Sample]) -> ReadingVerdict {
    let mut mismatches = 0;
    let mut first = None;
    let mut ratios = std::collections::BTreeSet::new();
    for smp in samples {
        let want = parity_sign((reading.exponent)(&smp.ctx));
        ratios.insert(want * smp.sign);
        if want != smp.sign {
            mismatches += 1;
            if first.is_none() {
                first = Some(format!(
                    "{:?} q={} s={}: oracle {}, formula {}",
                    smp.cell, smp.ctx.q, smp.ctx.s, smp.sign, want
                ));
            }
        }
    }
    ReadingVerdict {
        name: reading.name.to_string(),
        expression: reading.expression.to_string(),
        checked: samples.len(),
        mismatches,
        matches_everywhere: mismatches == 0,
        off_by_global_sign: mismatches == samples.len() && ratios.len() == 1,
        first_mismatch: first,
    }
}

fn context(cell: &Cell, q: usize, s: usize) -> SignContext {
    let (p, r) = cell.arities();
    SignContext {
        l: cell.l as i64,
        q: q as i64,
        s: s as i64,
        p: p as i64,
        r: r as i64,
        a: cell.a as i64,
        b: cell.b as i64,
    }
}

/// Runs the oracle over the sweep and tests every reading.
pub fn resolve_printed_exponents(cfg: &SweepConfig) -> Result<SignsReport> {
    let jobs: Vec<(Cell, usize, usize)> = (0..=cfg.max_l)
        .flat_map(Cell::all)
        .flat_map(|c| (0..=cfg.max_q).flat_map(move |q| (0..=cfg.max_s).map(move |s| (c, q, s))))
        .collect();
    let results: Vec<Result<Sample>> = jobs
        .par_iter()
        .enumerate()
        .map(|(k, &(cell, q, s))| {
            let sign = jacobian_sign(
                q,
                s,
                &cell,
                cfg.points_per_cell,
                cfg.seed ^ ((k as u64) << 1),
            )?;
            Ok(Sample {
                cell,
                ctx: context(&cell, q, s),
                sign,
            })
        })
        .collect();
    let mut samples = Vec::new();
    let mut constant = true;
    for r in results {
        match r {
            Ok(smp) => samples.push(smp),
            Err(Error::ContractViolation(msg)) if msg.contains("not constant") => constant = false,
            Err(e) => return Err(e),
        }
    }
    let neg: Vec<&Sample> = samples
        .iter()
        .filter(|x| x.cell.kind == CellKind::Negative)
        .collect();
    let pos: Vec<&Sample> = samples
        .iter()
        .filter(|x| x.cell.kind == CellKind::Positive)
        .collect();

    let positive = vec![
        verdict(&positive_lhs(), &pos),
        verdict(&positive_rhs(), &pos),
    ];
    let negative_lhs: Vec<ReadingVerdict> = negative_lhs_readings()
        .iter()
        .map(|r| verdict(r, &neg))
        .collect();
    let negative_rhs: Vec<ReadingVerdict> = negative_rhs_readings()
        .iter()
        .map(|r| verdict(r, &neg))
        .collect();
    let observed = verdict(&negative_observed(), &neg);

    let mut parity = Vec::new();
    for l in negative_lhs_readings() {
        for r in negative_rhs_readings() {
            let equal = neg.iter().all(|smp| {
                parity_sign((l.exponent)(&smp.ctx)) == parity_sign((r.exponent)(&smp.ctx))
            });
            parity.push(ParityComparison {
                lhs: l.expression.to_string(),
                rhs: r.expression.to_string(),
                equal,
            });
        }
    }
    let (pl, pr) = (positive_lhs(), positive_rhs());
    parity.push(ParityComparison {
        lhs: pl.expression.to_string(),
        rhs: pr.expression.to_string(),
        equal: pos.iter().all(|smp| {
            parity_sign((pl.exponent)(&smp.ctx)) == parity_sign((pr.exponent)(&smp.ctx))
        }),
    });

    let resolved_lhs: Vec<String> = negative_lhs
        .iter()
        .filter(|v| v.matches_everywhere)
        .map(|v| v.expression.clone())
        .collect();
    let resolved_rhs: Vec<String> = negative_rhs
        .iter()
        .filter(|v| v.matches_everywhere)
        .map(|v| v.expression.clone())
        .collect();
    let passed = constant
        && positive.iter().all(|v| v.matches_everywhere)
        && !resolved_lhs.is_empty()
        && !resolved_rhs.is_empty();
    Ok(SignsReport {
        sweep: cfg.clone(),
        cells_checked: samples.len(),
        signs_constant_on_cells: constant,
        positive,
        negative_lhs,
        negative_rhs,
        negative_observed: observed,
        parity,
        resolved_lhs,
        resolved_rhs,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Coord {
        Coord::new(n.into(), d.into())
    }

    #[test]
    fn index_function_examples() {
        let tau = q(-1, 2);
        let c = |t: i64, d: i64| index_functions(&tau, &[q(t, d)]).unwrap();
        assert_eq!((c(-4, 5).a, c(-4, 5).b), (1, 1));
        assert_eq!((c(9, 10).a, c(9, 10).b), (0, 0));
        assert_eq!((c(0, 1).a, c(0, 1).b), (0, 1));
        assert!(index_functions(&Coord::zero(), &[q(0, 1)]).is_err());
        assert!(index_functions(&Coord::one(), &[q(0, 1)]).is_err());
    }

    #[test]
    fn chart_examples() {
        let tau = q(-1, 2);
        let (u1, u2) = charts(&tau, &[Coord::zero()]).unwrap();
        assert_eq!((u1, u2), (vec![Coord::zero()], vec![Coord::zero()]));
        let (u1, u2) = charts(&tau, &[q(-4, 5)]).unwrap();
        assert_eq!(u1, vec![q(-3, 5), Coord::zero()]);
        assert!(u2.is_empty());
        let (v1, v2) = charts(&q(1, 2), &[q(1, 5)]).unwrap();
        assert_eq!(v1, vec![q(2, 5)]);
        assert_eq!(v2, vec![Coord::zero()]);
    }

    #[test]
    fn cells_tile_and_points_land_inside() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for l in 0..=4 {
            for cell in Cell::all(l) {
                let (tau, t) = random_interior_point(&cell, &mut rng);
                assert_eq!(index_functions(&tau, &t).unwrap(), cell);
                let (p, r) = cell.arities();
                let (c1, c2) = charts(&tau, &t).unwrap();
                assert_eq!((c1.len(), c2.len()), (p, r));
            }
        }
    }

    #[test]
    fn chart_is_injective_on_cells() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for cell in Cell::all(3) {
            let (t1, x1) = random_interior_point(&cell, &mut rng);
            let (t2, x2) = random_interior_point(&cell, &mut rng);
            assert_ne!(charts(&t1, &x1).unwrap(), charts(&t2, &x2).unwrap());
        }
    }

    #[test]
    fn lowest_dimension_by_hand() {
        // l = 0: τ ↦ 1+2τ keeps orientation, τ ↦ 1-2τ reverses it
        let neg = Cell::new(CellKind::Negative, 0, 0, 0).unwrap();
        let pos = Cell::new(CellKind::Positive, 0, 0, 0).unwrap();
        assert_eq!(jacobian_sign(0, 0, &neg, 3, 1).unwrap(), 1);
        assert_eq!(jacobian_sign(0, 0, &pos, 3, 1).unwrap(), -1);
        // moving the y block past τ costs (-1)^s
        assert_eq!(jacobian_sign(0, 1, &neg, 3, 1).unwrap(), -1);
    }

    #[test]
    fn small_sweep_report() {
        let cfg = SweepConfig {
            max_l: 3,
            max_q: 2,
            max_s: 2,
            points_per_cell: 3,
            seed: 5,
        };
        let r = resolve_printed_exponents(&cfg).unwrap();
        assert!(r.signs_constant_on_cells);
        assert!(r.positive.iter().all(|v| v.matches_everywhere));
        assert!(r.negative_observed.matches_everywhere);
        assert!(r.parity.iter().any(|c| c.equal));
    }
}
