//! Acceptance suite. Each test prints one `PASS`/`FAIL` line and asserts.
//!
//! Every comparison is exact; the only tunables are the sweep bounds pinned
//! below.

use std::sync::Arc;

use knotalg::chord::{concat_descends, dim_a, four_term_relators, relation_span};
use knotalg::gerstenhaber::bracket_classes;
use knotalg::operad::hochschild_boundary;
use knotalg::signs::SweepConfig;
use knotalg::verify::{self, AxiomSweep, CheckOutcome};
use knotalg::{ComplexWindow, KnotContext, PoisOperad, PoisWindow, Scalar, WindowConfig, Q};

const DIMENSIONS: [usize; 2] = [5, 6];
const BASIS_MAX_ARITY: usize = 7;
const COSIMPLICIAL_MAX_ARITY: usize = 4;
const BOUNDARY_BASIS_MAX_ARITY: usize = 6;
const NORMALIZATION_MAX_P: usize = 5;
const CHAIN_LAW_MAX_ARITY: usize = 6;
const HOMOLOGY_LAW_MAX_TOTAL: i64 = 8;
const CENTRALITY_MAX_TOTAL: i64 = 6;
const CHORD_DIMS: [usize; 5] = [1, 0, 1, 1, 3];
const CHORD_DESCENT_TOTAL: usize = 5;

fn report(criterion: usize, title: &str, checks: &[CheckOutcome]) {
    let ok = checks.iter().all(|c| c.passed);
    println!(
        "criterion {} ({}): {}",
        criterion,
        title,
        if ok { "PASS" } else { "FAIL" }
    );
    for c in checks {
        println!(
            "    {} [{}] {} checks; {}",
            c.name,
            if c.passed { "ok" } else { "failed" },
            c.checks,
            c.detail
        );
    }
    assert!(ok, "criterion {} failed", criterion);
}

fn default_window(n: usize) -> PoisWindow {
    ComplexWindow::new(
        Arc::new(PoisOperad::new(n).unwrap()),
        WindowConfig::default(),
    )
}

fn outcome(name: String, passed: bool, detail: String) -> CheckOutcome {
    CheckOutcome {
        name,
        passed,
        checks: 1,
        detail,
    }
}

#[test]
fn criterion_1_basis_dimensions() {
    let checks: Vec<_> = DIMENSIONS
        .iter()
        .map(|&n| verify::basis_sanity(n, BASIS_MAX_ARITY).unwrap())
        .collect();
    report(1, "basis dimensions", &checks);
}

#[test]
fn criterion_2_structural_identities() {
    let mut checks = Vec::new();
    for n in DIMENSIONS {
        checks.push(verify::cosimplicial::<Q>(n, COSIMPLICIAL_MAX_ARITY, 7).unwrap());
        checks.push(verify::operad_axioms::<Q>(n, AxiomSweep::default()).unwrap());
        checks.push(verify::boundary_squares_on_basis::<Q>(n, BOUNDARY_BASIS_MAX_ARITY).unwrap());
        checks.push(verify::boundary_squares_to_zero(&default_window(n)).unwrap());
    }
    report(2, "structural identities", &checks);
}

#[test]
fn criterion_3_normalization_oracle() {
    let checks: Vec<_> = DIMENSIONS
        .iter()
        .map(|&n| verify::normalization_oracle::<Q>(n, NORMALIZATION_MAX_P).unwrap())
        .collect();
    report(3, "normalized vs full homology", &checks);
}

#[test]
fn criterion_4_total_degree_slices() {
    let mut checks = Vec::new();
    for (n, degree, rank) in [(5usize, 7i64, 2usize), (6, 10, 1)] {
        let slice = default_window(n).total_degree_slice(degree).unwrap();
        let total: usize = slice.entries.iter().map(|e| e.rank).sum();
        let parts: Vec<String> = slice
            .entries
            .iter()
            .map(|e| format!("{}:{}", e.bidegree, e.rank))
            .collect();
        checks.push(outcome(
            format!("n={} total degree {}", n, degree),
            total == rank && slice.complete,
            format!(
                "total rank {} (expected {}); {}",
                total,
                rank,
                parts.join(" ")
            ),
        ));
    }
    report(4, "total-degree slices", &checks);
}

#[test]
fn criterion_5_named_classes() {
    let mut checks = Vec::new();
    for (n, v2_rank) in [(5usize, 2usize), (6, 1)] {
        let w = default_window(n);
        let d = n - 1;
        let r1 = w.homology_rank(2, d).unwrap();
        let r2 = w.homology_rank(4, 2 * d).unwrap();
        let ctx = KnotContext::<Q>::with_window(w);
        let iota = ctx.class_iota().unwrap();
        let op = ctx.window().operad().clone();
        let d_iota = hochschild_boundary(op.as_ref(), &iota.representative).unwrap();
        checks.push(outcome(
            format!("n={}", n),
            r1 == 1 && r2 == v2_rank && d_iota.is_zero(),
            format!(
                "rank(-2,{}) = {}, rank(-4,{}) = {} (expected {}), ∂ι = {}",
                d,
                r1,
                2 * d,
                r2,
                v2_rank,
                d_iota
            ),
        ));
    }
    report(5, "named classes", &checks);
}

#[test]
fn criterion_6_bracket_statements() {
    let mut checks = Vec::new();

    let ctx = KnotContext::<Q>::with_window(default_window(5));
    let w = ctx.window();
    let iota = ctx.class_iota().unwrap();
    let psi_ii = bracket_classes(w, &iota, &iota).unwrap();
    checks.push(outcome(
        "n=5 Ψ(ι,ι) ≠ 0".into(),
        !psi_ii.is_zero(),
        format!(
            "class at {} with coordinates {:?}",
            psi_ii.bidegree, psi_ii.coordinates
        ),
    ));
    let a = knotalg::gerstenhaber::cup_classes(w, &iota, &psi_ii).unwrap();
    let v2 = ctx.class_v2().unwrap();
    let sq = ctx.iota_squared().unwrap();
    for c in [0i64, 1, -1, 5] {
        let v = v2.try_add(&sq.scale(&Q::from_i64(c))).unwrap();
        let b = bracket_classes(w, &iota, &v).unwrap();
        let slice_rank = w.homology_rank(a.bidegree.p, a.bidegree.q).unwrap();
        let det = a.coordinates.len() == 2
            && b.coordinates.len() == 2
            && a.coordinates[0].clone() * b.coordinates[1].clone()
                != a.coordinates[1].clone() * b.coordinates[0].clone();
        checks.push(outcome(
            format!("n=5 span with v2 + {}·ι∪ι", c),
            a.bidegree == b.bidegree && a.bidegree.total() == 7 && slice_rank == 2 && det,
            format!(
                "ι∪Ψ(ι,ι) = {:?}, Ψ(ι,v) = {:?} in {}",
                a.coordinates, b.coordinates, a.bidegree
            ),
        ));
    }

    let ctx = KnotContext::<Q>::with_window(default_window(6));
    let w = ctx.window();
    let iota = ctx.class_iota().unwrap();
    let psi_ii = bracket_classes(w, &iota, &iota).unwrap();
    checks.push(outcome(
        "n=6 Ψ(ι,ι) = 0".into(),
        psi_ii.is_zero(),
        format!("coordinates {:?}", psi_ii.coordinates),
    ));
    let v2 = ctx.class_v2().unwrap();
    let b = bracket_classes(w, &iota, &v2).unwrap();
    checks.push(outcome(
        "n=6 Ψ(ι,v2) = 0".into(),
        b.is_zero(),
        format!("coordinates {:?}", b.coordinates),
    ));
    let classes = verify::homology_basis_classes(w, CENTRALITY_MAX_TOTAL).unwrap();
    let nonzero: Vec<String> = classes
        .iter()
        .filter(|c| !bracket_classes(w, &iota, c).unwrap().is_zero())
        .map(|c| c.bidegree.to_string())
        .collect();
    checks.push(outcome(
        format!(
            "n=6 ι central on classes of total degree <= {}",
            CENTRALITY_MAX_TOTAL
        ),
        nonzero.is_empty(),
        format!(
            "{} basis classes, nonzero brackets at {:?}",
            classes.len(),
            nonzero
        ),
    ));
    report(6, "bracket statements", &checks);
}

#[test]
fn criterion_7_gerstenhaber_laws() {
    let mut checks = Vec::new();
    for n in DIMENSIONS {
        checks.extend(verify::chain_laws::<Q>(n, CHAIN_LAW_MAX_ARITY).unwrap());
    }
    checks.extend(verify::homology_laws(&default_window(5), HOMOLOGY_LAW_MAX_TOTAL).unwrap());
    report(7, "Gerstenhaber laws", &checks);
}

#[test]
fn criterion_8_chart_signs() {
    let (check, r) = verify::signs(&SweepConfig::default()).unwrap();
    let mut checks = vec![check];
    checks.push(outcome(
        "signs constant on cells".into(),
        r.signs_constant_on_cells,
        format!(
            "{} cells, {} points each",
            r.cells_checked, r.sweep.points_per_cell
        ),
    ));
    checks.push(outcome(
        "a reading of each printed exponent matches".into(),
        !r.resolved_lhs.is_empty() && !r.resolved_rhs.is_empty(),
        format!(
            "matching readings: lhs {:?}, rhs {:?}",
            r.resolved_lhs, r.resolved_rhs
        ),
    ));
    report(8, "chart signs", &checks);
}

#[test]
fn criterion_9_chord_diagrams() {
    let mut checks = Vec::new();
    let dims: Vec<usize> = (0..CHORD_DIMS.len())
        .map(|k| dim_a::<Q>(k).unwrap())
        .collect();
    checks.push(outcome(
        "dim A_k".into(),
        dims == CHORD_DIMS,
        format!("{:?} (expected {:?})", dims, CHORD_DIMS),
    ));
    let mut relators = 0;
    let mut inside = true;
    for k in 2..CHORD_DIMS.len() {
        let span = relation_span::<Q>(k).unwrap();
        for r in four_term_relators(k).unwrap() {
            relators += 1;
            inside &= span.contains(&r);
        }
    }
    checks.push(outcome(
        "4T relators vanish in the quotient".into(),
        inside,
        format!("{} relators", relators),
    ));
    let mut pairs = 0;
    let mut failures = Vec::new();
    for k1 in 0..=CHORD_DESCENT_TOTAL {
        for k2 in 0..=CHORD_DESCENT_TOTAL - k1 {
            match concat_descends::<Q>(k1, k2).unwrap() {
                Ok(n) => pairs += n,
                Err(e) => failures.push(e),
            }
        }
    }
    checks.push(outcome(
        format!(
            "concatenation descends for k1 + k2 <= {}",
            CHORD_DESCENT_TOTAL
        ),
        failures.is_empty(),
        format!("{} products checked; {:?}", pairs, failures),
    ));
    report(9, "chord diagrams", &checks);
}
