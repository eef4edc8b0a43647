use std::sync::Arc;

use knotalg::gerstenhaber::{basis_classes, bracket_classes, cup_classes};
use knotalg::operad::{compose, hochschild_boundary};
use knotalg::{
    AssocOperad, ComplexWindow, KnotContext, PoisElement, PoisOperad, Scalar, WindowConfig, F32003,
    F65537, Q,
};

fn window<F: Scalar>(n: usize) -> ComplexWindow<PoisOperad, F> {
    ComplexWindow::new(
        Arc::new(PoisOperad::new(n).unwrap()),
        WindowConfig::default(),
    )
}

#[test]
fn ranks_agree_across_fields() {
    for n in [5, 6] {
        let q: Vec<_> = window::<Q>(n)
            .table()
            .unwrap()
            .iter()
            .map(|e| (e.bidegree, e.rank))
            .collect();
        let p: Vec<_> = window::<F32003>(n)
            .table()
            .unwrap()
            .iter()
            .map(|e| (e.bidegree, e.rank))
            .collect();
        let r: Vec<_> = window::<F65537>(n)
            .table()
            .unwrap()
            .iter()
            .map(|e| (e.bidegree, e.rank))
            .collect();
        assert_eq!(q, p);
        assert_eq!(q, r);
    }
}

#[test]
fn parsed_expressions_compose_and_bound() {
    let op = PoisOperad::new(5).unwrap();
    // [x1,x2] ∘_2 (x1 x2) = [x1,x2] x3 + x2 [x1,x3]
    let x: PoisElement = op.parse_element("[x1,x2]").unwrap();
    let y: PoisElement = op.parse_element("x1*x2").unwrap();
    let z = compose(&op, &x, 2, &y).unwrap();
    let sum = |terms: &[&str]| -> PoisElement {
        let mut acc: PoisElement = op.parse_element(terms[0]).unwrap();
        for t in &terms[1..] {
            acc = acc.try_add(&op.parse_element(t).unwrap()).unwrap();
        }
        acc
    };
    assert_eq!(z, sum(&["[x1,x2]*x3", "x2*[x1,x3]"]));
    // graded Jacobi: for even bracket degree the cyclic sum vanishes
    assert!(sum(&["[[x1,x2],x3]", "[[x2,x3],x1]", "[[x3,x1],x2]"]).is_zero());
    assert!(hochschild_boundary(&op, &x).unwrap().is_zero());
}

#[test]
fn cache_directory_reproduces_boundaries() {
    let dir = tempfile::tempdir().unwrap();
    let cold: ComplexWindow<PoisOperad, Q> = window::<Q>(5).with_cache_dir(dir.path()).unwrap();
    let warm: ComplexWindow<PoisOperad, Q> = window::<Q>(5).with_cache_dir(dir.path()).unwrap();
    for (p, q) in [(3, 8), (4, 8), (5, 12), (6, 16)] {
        assert_eq!(cold.boundary(p, q).unwrap(), warm.boundary(p, q).unwrap());
    }
    assert_eq!(cold.table().unwrap(), warm.table().unwrap());
}

#[test]
fn poisson_algebra_on_low_classes() {
    let w = window::<Q>(5);
    let iota = &basis_classes(&w, 2, 4).unwrap()[0];
    let sq = cup_classes(&w, iota, iota).unwrap();
    assert!(!sq.is_zero());
    // Ψ(ι, ι∪ι) = 2 ι∪Ψ(ι,ι) by the Poisson rule with (q+1)s even
    let lhs = bracket_classes(&w, iota, &sq).unwrap();
    let bi = bracket_classes(&w, iota, iota).unwrap();
    let rhs = cup_classes(&w, &bi, iota).unwrap().scale(&Q::from_i64(2));
    assert!(lhs.same_class(&rhs));
}

#[test]
fn knot_context_registry_is_stable() {
    let mut a: KnotContext<Q> = KnotContext::new(5, WindowConfig::default()).unwrap();
    let mut b: KnotContext<Q> = KnotContext::new(5, WindowConfig::default()).unwrap();
    a.register_defaults().unwrap();
    b.register_defaults().unwrap();
    let show = |c: &KnotContext<Q>| {
        c.registry()
            .iter()
            .map(|(k, v)| format!("{} {} {}", k, v.bidegree, v.representative))
            .collect::<Vec<_>>()
    };
    assert_eq!(show(&a), show(&b));
}

#[test]
fn associative_operad_has_trivial_normalized_homology() {
    let w: ComplexWindow<AssocOperad, Q> =
        ComplexWindow::new(Arc::new(AssocOperad), WindowConfig::default());
    let nonzero: Vec<_> = w
        .table()
        .unwrap()
        .into_iter()
        .filter(|e| e.rank > 0)
        .collect();
    assert_eq!(nonzero.len(), 1);
    assert_eq!(nonzero[0].bidegree.p, 0);
}
