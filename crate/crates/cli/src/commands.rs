use std::sync::Arc;

use serde_json::{json, Value};

use knotalg::chord::dim_a;
use knotalg::gerstenhaber::{basis_classes, class_of, total_degree};
use knotalg::operad::{hochschild_boundary, homogeneous_degree};
use knotalg::signs::SweepConfig;
use knotalg::verify::{self, CheckOutcome};
use knotalg::{
    cup_product, psi_bracket, AssocOperad, Bidegree, ComplexWindow, ElementOf, Error, KnotContext,
    MultiplicativeOperad, PoisOperad, Result, Scalar, WindowConfig, F32003, F65537, Q,
};

use crate::{Cli, Command, Common, FieldChoice, OperadChoice, Output, VerifyKind};

/// Bound on `p + r` for the chain-level bracket and cup laws.
pub const CHAIN_LAW_ARITY: usize = 6;
/// Bound on total degree of classes fed to the homology-level laws.
pub const LAW_TOTAL_DEGREE: i64 = 8;

trait CliOperad: MultiplicativeOperad + Sized {
    fn parse<F: Scalar>(&self, s: &str) -> Result<ElementOf<Self, F>>;
}

impl CliOperad for PoisOperad {
    fn parse<F: Scalar>(&self, s: &str) -> Result<ElementOf<Self, F>> {
        self.parse_element(s)
    }
}

impl CliOperad for AssocOperad {
    fn parse<F: Scalar>(&self, s: &str) -> Result<ElementOf<Self, F>> {
        knotalg::operad::parse_element(self, s)
    }
}

pub fn run(cli: &Cli) -> Result<Output> {
    match cli.common.field {
        FieldChoice::Q => run_field::<Q>(cli),
        FieldChoice::P32003 => run_field::<F32003>(cli),
        FieldChoice::P65537 => run_field::<F65537>(cli),
    }
}

fn window<O: MultiplicativeOperad, F: Scalar>(
    c: &Common,
    op: Arc<O>,
) -> Result<ComplexWindow<O, F>> {
    let w = ComplexWindow::new(
        op,
        WindowConfig {
            max_arity: c.max_arity,
            max_complexity: c.max_complexity,
            normalized: !c.full,
        },
    );
    match &c.cache_dir {
        Some(dir) => w.with_cache_dir(dir),
        None => Ok(w),
    }
}

fn pois_windows<F: Scalar>(c: &Common) -> Result<Vec<ComplexWindow<PoisOperad, F>>> {
    if c.operad != OperadChoice::Pois {
        return Err(Error::Argument("this command needs --operad pois".into()));
    }
    c.n.iter()
        .map(|&n| window(c, Arc::new(PoisOperad::new(n)?)))
        .collect()
}

fn merge(parts: Vec<Output>) -> Output {
    let mut it = parts.into_iter();
    let mut out = it.next().expect("at least one part");
    let mut results = match out.results.take() {
        Value::Array(v) => v,
        v => vec![v],
    };
    for p in it {
        out.rows.extend(p.rows);
        out.summary.extend(p.summary);
        match p.results {
            Value::Array(v) => results.extend(v),
            v => results.push(v),
        }
        out.passed = match (out.passed, p.passed) {
            (Some(a), Some(b)) => Some(a && b),
            (a, b) => a.or(b),
        };
    }
    out.results = Value::Array(results);
    out
}

fn run_field<F: Scalar>(cli: &Cli) -> Result<Output> {
    let c = &cli.common;
    if c.n.is_empty() {
        return Err(Error::Argument("at least one --n is required".into()));
    }
    match &cli.command {
        Command::ChordDims { max_k } => chord_dims::<F>(*max_k),
        Command::Verify { what } => verify_cmd::<F>(c, *what),
        Command::Classes => {
            let parts = pois_windows::<F>(c)?
                .into_iter()
                .map(classes)
                .collect::<Result<_>>()?;
            Ok(merge(parts))
        }
        Command::Table { total_degree } => {
            let parts = pois_windows::<F>(c)?
                .into_iter()
                .map(|w| table(w, *total_degree))
                .collect::<Result<_>>()?;
            Ok(merge(parts))
        }
        cmd => match c.operad {
            OperadChoice::Pois => {
                let parts = pois_windows::<F>(c)?
                    .iter()
                    .map(|w| window_command(cmd, w))
                    .collect::<Result<_>>()?;
                Ok(merge(parts))
            }
            OperadChoice::Assoc => {
                let w = window::<_, F>(c, Arc::new(AssocOperad))?;
                window_command(cmd, &w)
            }
        },
    }
}

fn window_command<O: CliOperad, F: Scalar>(
    cmd: &Command,
    w: &ComplexWindow<O, F>,
) -> Result<Output> {
    match cmd {
        Command::Basis { bidegree } => basis(w, bidegree.as_deref()),
        Command::Homology { bidegree } => homology(w, bidegree.as_deref()),
        Command::Slice { total_degree } => slice(w, *total_degree),
        Command::Bracket { x, y } => binary(w, "bracket", x, y),
        Command::Cup { x, y } => binary(w, "cup", x, y),
        _ => unreachable!("handled by run_field"),
    }
}

fn basis<O: MultiplicativeOperad, F: Scalar>(
    w: &ComplexWindow<O, F>,
    bidegree: Option<&str>,
) -> Result<Output> {
    let name = w.operad().name();
    if let Some(b) = bidegree {
        let b = Bidegree::parse(b)?;
        let basis = w.basis(b.p, b.q)?;
        let mut out = Output::new(vec!["operad", "bidegree", "index", "monomial"]);
        for (i, m) in basis.iter().enumerate() {
            out.rows.push(vec![
                name.clone(),
                b.to_string(),
                i.to_string(),
                m.to_string(),
            ]);
        }
        out.summary
            .push(format!("{} {}: dim {}", name, b, basis.len()));
        out.results = json!([{
            "operad": name,
            "bidegree": b.to_string(),
            "dim": basis.len(),
            "monomials": basis.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        }]);
        return Ok(out);
    }
    let cfg = w.config();
    let step = w.operad().degree_step();
    let mut out = Output::new(vec!["operad", "bidegree", "total_degree", "dim"]);
    let mut entries = Vec::new();
    for p in 0..=cfg.max_arity {
        for m in 0..=cfg.max_complexity {
            let b = Bidegree::new(p, m * step);
            let dim = w.basis(b.p, b.q)?.len();
            if dim == 0 {
                continue;
            }
            out.rows.push(vec![
                name.clone(),
                b.to_string(),
                b.total().to_string(),
                dim.to_string(),
            ]);
            entries
                .push(json!({ "bidegree": b.to_string(), "total_degree": b.total(), "dim": dim }));
        }
    }
    out.results = json!([{ "operad": name, "dimensions": entries }]);
    Ok(out)
}

fn homology<O: MultiplicativeOperad, F: Scalar>(
    w: &ComplexWindow<O, F>,
    bidegree: Option<&str>,
) -> Result<Output> {
    let name = w.operad().name();
    if let Some(b) = bidegree {
        let b = Bidegree::parse(b)?;
        let classes = basis_classes(w, b.p, b.q)?;
        let mut out = Output::new(vec!["operad", "bidegree", "index", "representative"]);
        let reps: Vec<String> = classes
            .iter()
            .map(|c| c.representative.to_string())
            .collect();
        for (i, r) in reps.iter().enumerate() {
            out.rows
                .push(vec![name.clone(), b.to_string(), i.to_string(), r.clone()]);
        }
        out.summary
            .push(format!("{} {}: rank {}", name, b, classes.len()));
        out.results = json!([{
            "operad": name,
            "bidegree": b.to_string(),
            "total_degree": b.total(),
            "rank": classes.len(),
            "representatives": reps,
        }]);
        return Ok(out);
    }
    let mut out = Output::new(vec!["operad", "bidegree", "total_degree", "rank"]);
    let mut entries = Vec::new();
    for e in w.table()?.into_iter().filter(|e| e.rank > 0) {
        out.rows.push(vec![
            name.clone(),
            e.bidegree.to_string(),
            e.bidegree.total().to_string(),
            e.rank.to_string(),
        ]);
        entries.push(json!({
            "bidegree": e.bidegree.to_string(),
            "total_degree": e.bidegree.total(),
            "rank": e.rank,
        }));
    }
    out.results = json!([{ "operad": name, "groups": entries }]);
    Ok(out)
}

fn slice<O: MultiplicativeOperad, F: Scalar>(w: &ComplexWindow<O, F>, t: i64) -> Result<Output> {
    let name = w.operad().name();
    let report = w.total_degree_slice(t)?;
    let mut out = Output::new(vec!["operad", "bidegree", "rank"]);
    let total: usize = report.entries.iter().map(|e| e.rank).sum();
    for e in &report.entries {
        out.rows.push(vec![
            name.clone(),
            e.bidegree.to_string(),
            e.rank.to_string(),
        ]);
    }
    out.summary
        .push(format!("{} total degree {}: total rank {}", name, t, total));
    out.results = json!([{
        "operad": name,
        "total_degree": t,
        "total_rank": total,
        "complete": report.complete,
        "entries": report.entries.iter().map(|e| json!({
            "bidegree": e.bidegree.to_string(),
            "rank": e.rank,
        })).collect::<Vec<_>>(),
    }]);
    Ok(out)
}

fn binary<O: CliOperad, F: Scalar>(
    w: &ComplexWindow<O, F>,
    what: &str,
    xs: &str,
    ys: &str,
) -> Result<Output> {
    let op = w.operad().as_ref();
    let name = op.name();
    let x: ElementOf<O, F> = op.parse(xs)?;
    let y: ElementOf<O, F> = op.parse(ys)?;
    let deg = |e: &ElementOf<O, F>, s: &str| {
        if e.is_zero() {
            return Err(Error::Argument(format!("{} is zero", s)));
        }
        homogeneous_degree(op, e)
            .ok_or_else(|| Error::Argument(format!("{} is not homogeneous", s)))
    };
    let q = deg(&x, xs)? + deg(&y, ys)?;
    let z = if what == "bracket" {
        psi_bracket(op, &x, &y)?
    } else {
        cup_product(op, &x, &y)?
    };
    let b = Bidegree::new(z.arity(), q);
    let cycle = hochschild_boundary(op, &z)?.is_zero();
    let class = if cycle {
        match class_of(w, &z, q) {
            Ok(c) => Some(
                c.coordinates
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>(),
            ),
            Err(Error::WindowTooSmall { .. }) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let t = total_degree(op, &z)?.unwrap_or(b.total());
    let mut out = Output::new(vec![
        "operad",
        "operation",
        "result",
        "bidegree",
        "total_degree",
        "cycle",
        "class",
    ]);
    let class_s = class
        .as_ref()
        .map(|c| format!("[{}]", c.join(",")))
        .unwrap_or_default();
    out.rows.push(vec![
        name.clone(),
        what.to_string(),
        z.to_string(),
        b.to_string(),
        t.to_string(),
        cycle.to_string(),
        class_s,
    ]);
    out.results = json!([{
        "operad": name,
        "operation": what,
        "x": x.to_string(),
        "y": y.to_string(),
        "result": z.to_string(),
        "bidegree": b.to_string(),
        "total_degree": t,
        "cycle": cycle,
        "class": class,
    }]);
    Ok(out)
}

fn classes<F: Scalar>(w: ComplexWindow<PoisOperad, F>) -> Result<Output> {
    let name = w.operad().name();
    let mut ctx = KnotContext::with_window(w);
    ctx.register_defaults()?;
    let sq = ctx.iota_squared()?;
    ctx.register("iota^2", sq);
    let mut out = Output::new(vec![
        "operad",
        "class",
        "bidegree",
        "total_degree",
        "coordinates",
        "representative",
    ]);
    let mut res = Vec::new();
    for (k, c) in ctx.registry() {
        let coords: Vec<String> = c.coordinates.iter().map(|v| v.to_string()).collect();
        out.rows.push(vec![
            name.clone(),
            k.clone(),
            c.bidegree.to_string(),
            c.total_degree().to_string(),
            format!("[{}]", coords.join(",")),
            c.representative.to_string(),
        ]);
        res.push(json!({
            "operad": name,
            "class": k,
            "bidegree": c.bidegree.to_string(),
            "total_degree": c.total_degree(),
            "coordinates": coords,
            "representative": c.representative.to_string(),
        }));
    }
    out.summary
        .extend(ctx.warnings().iter().map(|w| format!("warning: {}", w)));
    out.results = Value::Array(res);
    Ok(out)
}

fn table<F: Scalar>(w: ComplexWindow<PoisOperad, F>, bound: Option<i64>) -> Result<Output> {
    let name = w.operad().name();
    let bound = bound.unwrap_or(3 * w.operad().n() as i64 - 8);
    let mut ctx = KnotContext::with_window(w);
    ctx.register_defaults()?;
    let rows = ctx.poisson_table(bound)?;
    let mut out = Output::new(vec![
        "operad",
        "operation",
        "left",
        "right",
        "bidegree",
        "total_degree",
        "coordinates",
        "zero",
    ]);
    for r in &rows {
        out.rows.push(vec![
            name.clone(),
            r.operation.clone(),
            r.left.clone(),
            r.right.clone(),
            r.bidegree.to_string(),
            r.total_degree.to_string(),
            format!("[{}]", r.coordinates.join(",")),
            r.is_zero.to_string(),
        ]);
    }
    out.summary.push(format!(
        "{}: {} products of total degree <= {}",
        name,
        rows.len(),
        bound
    ));
    out.results = json!([{ "operad": name, "max_total_degree": bound, "rows": rows }]);
    Ok(out)
}

fn chord_dims<F: Scalar>(max_k: usize) -> Result<Output> {
    let dims: Vec<usize> = (0..=max_k).map(dim_a::<F>).collect::<Result<_>>()?;
    let mut out = Output::new(vec!["k", "dim"]);
    for (k, d) in dims.iter().enumerate() {
        out.rows.push(vec![k.to_string(), d.to_string()]);
    }
    let joined: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
    out.summary.push(format!(
        "dim A_k for k = 0..{}: {}",
        max_k,
        joined.join(",")
    ));
    out.results = json!({ "dims": dims });
    Ok(out)
}

fn verify_cmd<F: Scalar>(c: &Common, what: VerifyKind) -> Result<Output> {
    use VerifyKind::*;
    let wants = |k: VerifyKind| what == k || what == All;
    let mut checks: Vec<CheckOutcome> = Vec::new();
    for w in pois_windows::<F>(c)? {
        let n = w.operad().n();
        if wants(Cosimplicial) {
            checks.push(verify::basis_sanity(n, 7)?);
            checks.push(verify::cosimplicial::<F>(n, 4, 7)?);
            checks.push(verify::boundary_squares_to_zero(&w)?);
            checks.push(verify::boundary_squares_on_basis::<F>(n, 6)?);
        }
        if wants(OperadAxioms) {
            checks.push(verify::operad_axioms::<F>(
                n,
                verify::AxiomSweep::default(),
            )?);
        }
        if wants(Leibniz) {
            checks.extend(verify::chain_laws::<F>(n, CHAIN_LAW_ARITY)?);
        }
        if wants(Laws) {
            checks.push(verify::normalization_oracle::<F>(n, 5)?);
            checks.extend(verify::homology_laws(&w, LAW_TOTAL_DEGREE)?);
        }
        if wants(Knot) {
            if n == 5 || n == 6 {
                checks.extend(verify::knot_statements(&KnotContext::with_window(w))?);
            } else {
                return Err(Error::Argument(format!(
                    "knot statements are pinned for n = 5 and n = 6 only, not {}",
                    n
                )));
            }
        }
    }
    if wants(Chords) {
        checks.push(verify::chord_diagrams::<F>(5, 5)?);
    }
    if wants(Signs) {
        checks.push(verify::signs(&SweepConfig::default())?.0);
    }
    let mut out = Output::new(vec!["check", "result", "checks", "detail"]);
    for k in &checks {
        out.rows.push(vec![
            k.name.clone(),
            if k.passed { "PASS" } else { "FAIL" }.to_string(),
            k.checks.to_string(),
            k.detail.clone(),
        ]);
    }
    let failed = checks.iter().filter(|k| !k.passed).count();
    out.summary
        .push(format!("{} checks, {} failed", checks.len(), failed));
    out.passed = Some(failed == 0);
    out.results = serde_json::to_value(&checks)?;
    Ok(out)
}
