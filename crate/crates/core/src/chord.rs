//! Linear chord diagrams modulo the 4-term and 1-term relations.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{EchelonSpan, SparseRow};
use crate::scalar::Scalar;

/// Largest number of chords the brute-force enumeration accepts.
pub const MAX_CHORDS: usize = 6;

/// A perfect matching on the points `1..=2k` of an oriented line, with
/// chords `(a, b)`, `a < b`, sorted by first endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChordDiagram {
    chords: Vec<(usize, usize)>,
}

impl ChordDiagram {
    pub fn empty() -> Self {
        ChordDiagram { chords: Vec::new() }
    }

    /// Canonicalizes and validates a list of chords.
    pub fn new(chords: Vec<(usize, usize)>) -> Result<Self> {
        let mut cs: Vec<(usize, usize)> = chords
            .into_iter()
            .map(|(a, b)| if a < b { (a, b) } else { (b, a) })
            .collect();
        cs.sort_unstable();
        let mut seen = vec![false; 2 * cs.len() + 1];
        for &(a, b) in &cs {
            for x in [a, b] {
                if x == 0 || x > 2 * cs.len() || seen[x] {
                    return Err(Error::Argument(format!(
                        "chords {:?} are not a perfect matching of 1..{}",
                        cs,
                        2 * cs.len()
                    )));
                }
                seen[x] = true;
            }
        }
        Ok(ChordDiagram { chords: cs })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut chords = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| Error::Parse(format!("expected (a b) in {:?}", s)))?;
            let nums: Vec<usize> = inner
                .0
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::Parse(format!("bad endpoint {:?}", t)))
                })
                .collect::<Result<_>>()?;
            if nums.len() != 2 {
                return Err(Error::Parse(format!(
                    "chord {:?} needs two endpoints",
                    inner.0
                )));
            }
            chords.push((nums[0], nums[1]));
            rest = inner.1.trim_start();
        }
        Self::new(chords)
    }

    pub fn k(&self) -> usize {
        self.chords.len()
    }

    pub fn chords(&self) -> &[(usize, usize)] {
        &self.chords
    }

    /// True if some chord has no other chord with exactly one endpoint
    /// inside it.
    pub fn has_isolated_chord(&self) -> bool {
        self.chords.iter().any(|&(a, b)| {
            self.chords
                .iter()
                .filter(|&&c| c != (a, b))
                .all(|&(c, d)| (a < c && c < b) == (a < d && d < b))
        })
    }

    pub fn concat(&self, other: &Self) -> Self {
        let shift = 2 * self.k();
        let mut chords = self.chords.clone();
        chords.extend(other.chords.iter().map(|&(a, b)| (a + shift, b + shift)));
        ChordDiagram { chords }
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in &self.chords {
            write!(f, "({} {})", a, b)?;
        }
        Ok(())
    }
}

fn check_budget(k: usize) -> Result<()> {
    if k > MAX_CHORDS {
        return Err(Error::Resource(format!(
            "{} chords exceed the enumeration budget of {}; use k <= {}",
            k, MAX_CHORDS, MAX_CHORDS
        )));
    }
    Ok(())
}

fn matchings(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if points.is_empty() {
        return vec![Vec::new()];
    }
    let a = points[0];
    let mut out = Vec::new();
    for k in 1..points.len() {
        let rest: Vec<usize> = points[1..]
            .iter()
            .enumerate()
            .filter(|&(i, _)| i + 1 != k)
            .map(|(_, &p)| p)
            .collect();
        for mut m in matchings(&rest) {
            m.insert(0, (a, points[k]));
            out.push(m);
        }
    }
    out
}

/// All `(2k-1)!!` diagrams with `k` chords, in lexicographic order.
pub fn enumerate_diagrams(k: usize) -> Result<Vec<ChordDiagram>> {
    check_budget(k)?;
    let points: Vec<usize> = (1..=2 * k).collect();
    let mut out: Vec<ChordDiagram> = matchings(&points)
        .into_iter()
        .map(|chords| ChordDiagram { chords })
        .collect();
    out.sort();
    Ok(out)
}

/// Diagram obtained by relabelling points given by sortable keys.
fn from_keys(chords: &[(usize, usize)]) -> ChordDiagram {
    let mut keys: Vec<usize> = chords.iter().flat_map(|&(a, b)| [a, b]).collect();
    keys.sort_unstable();
    let pos = |x: usize| keys.binary_search(&x).expect("key present") + 1;
    let mut cs: Vec<(usize, usize)> = chords
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (pos(a), pos(b));
            (x.min(y), x.max(y))
        })
        .collect();
    cs.sort_unstable();
    ChordDiagram { chords: cs }
}

/// The 4T relators with `k` chords, as signed sums of diagrams.
///
/// Start from `k-1` chords on `2k-1` points with one free point `m`. The
/// last chord joins `m` to a new point placed just left (`L_e`) or right
/// (`R_e`) of an endpoint `e` of another chord `c = (a, b)`; the relator is
/// `L_a - R_a + L_b - R_b`.
pub fn four_term_relators(k: usize) -> Result<Vec<Vec<(ChordDiagram, i64)>>> {
    check_budget(k)?;
    if k < 2 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for m in 1..=2 * k - 1 {
        let others: Vec<usize> = (1..=2 * k - 1).filter(|&x| x != m).collect();
        for base in matchings(&others) {
            // doubled coordinates leave room for the new point
            let doubled: Vec<(usize, usize)> = base.iter().map(|&(a, b)| (2 * a, 2 * b)).collect();
            for &(a, b) in &doubled {
                let place = |pos: usize| {
                    let mut cs = doubled.clone();
                    cs.push((2 * m, pos));
                    from_keys(&cs)
                };
                out.push(vec![
                    (place(a - 1), 1),
                    (place(a + 1), -1),
                    (place(b - 1), 1),
                    (place(b + 1), -1),
                ]);
            }
        }
    }
    Ok(out)
}

/// Indexed diagrams and the span of all 4T and 1T relators in degree `k`.
pub struct RelationSpan<F> {
    pub diagrams: Vec<ChordDiagram>,
    index: HashMap<ChordDiagram, usize>,
    pub span: EchelonSpan<F>,
}

impl<F: Scalar> RelationSpan<F> {
    pub fn vector(&self, terms: &[(ChordDiagram, i64)]) -> SparseRow<F> {
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for (d, c) in terms {
            *acc.entry(self.index[d]).or_insert(0) += c;
        }
        let mut v: SparseRow<F> = acc
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(j, c)| (j, F::from_i64(c)))
            .collect();
        v.sort_by_key(|(j, _)| *j);
        v
    }

    pub fn contains(&self, terms: &[(ChordDiagram, i64)]) -> bool {
        self.span.contains(self.vector(terms))
    }

    pub fn quotient_dim(&self) -> usize {
        self.diagrams.len() - self.span.rank()
    }
}

pub fn relation_span<F: Scalar>(k: usize) -> Result<RelationSpan<F>> {
    let diagrams = enumerate_diagrams(k)?;
    let index: HashMap<ChordDiagram, usize> = diagrams
        .iter()
        .enumerate()
        .map(|(i, d)| (d.clone(), i))
        .collect();
    let mut rs = RelationSpan {
        diagrams,
        index,
        span: EchelonSpan::from_rows(Vec::new()),
    };
    let mut rows: Vec<SparseRow<F>> = four_term_relators(k)?
        .iter()
        .map(|r| rs.vector(r))
        .filter(|v| !v.is_empty())
        .collect();
    for (i, d) in rs.diagrams.iter().enumerate() {
        if d.has_isolated_chord() {
            rows.push(vec![(i, F::one())]);
        }
    }
    rs.span = EchelonSpan::from_rows(rows);
    Ok(rs)
}

/// `dim A_k`.
pub fn dim_a<F: Scalar>(k: usize) -> Result<usize> {
    Ok(relation_span::<F>(k)?.quotient_dim())
}

/// Checks that concatenation on either side with any diagram sends each
/// generator of the relations in degree `k1` into the relations in degree
/// `k1 + k2`. Returns the number of checks, or the first failure.
pub fn concat_descends<F: Scalar>(
    k1: usize,
    k2: usize,
) -> Result<std::result::Result<usize, String>> {
    let target = relation_span::<F>(k1 + k2)?;
    let mut generators = four_term_relators(k1)?;
    generators.extend(
        enumerate_diagrams(k1)?
            .into_iter()
            .filter(|d| d.has_isolated_chord())
            .map(|d| vec![(d, 1)]),
    );
    let others = enumerate_diagrams(k2)?;
    let mut checks = 0;
    for g in &generators {
        for d in &others {
            let left: Vec<(ChordDiagram, i64)> = g.iter().map(|(x, c)| (x.concat(d), *c)).collect();
            let right: Vec<(ChordDiagram, i64)> =
                g.iter().map(|(x, c)| (d.concat(x), *c)).collect();
            for (side, v) in [("left", left), ("right", right)] {
                checks += 1;
                if !target.contains(&v) {
                    return Ok(Err(format!(
                        "relator {:?} concatenated on the {} with {} leaves the relations",
                        g.iter()
                            .map(|(x, c)| format!("{}*{}", c, x))
                            .collect::<Vec<_>>(),
                        side,
                        d
                    )));
                }
            }
        }
    }
    Ok(Ok(checks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (0..=4)
            .map(|k| enumerate_diagrams(k).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 3, 15, 105]);
        assert!(matches!(enumerate_diagrams(7), Err(Error::Resource(_))));
    }

    #[test]
    fn text_form() {
        let d = ChordDiagram::parse("(2 4)(1 3)").unwrap();
        assert_eq!(d.to_string(), "(1 3)(2 4)");
        assert!(ChordDiagram::parse("(1 2)(2 3)").is_err());
        assert!(ChordDiagram::parse("(1 2").is_err());
        assert_eq!(ChordDiagram::parse("").unwrap(), ChordDiagram::empty());
    }

    #[test]
    fn isolated_chords_in_degree_two() {
        let iso = |s: &str| ChordDiagram::parse(s).unwrap().has_isolated_chord();
        assert!(iso("(1 2)(3 4)"));
        assert!(iso("(1 4)(2 3)"));
        assert!(!iso("(1 3)(2 4)"));
        assert!(iso("(1 2)"));
    }

    #[test]
    fn dimensions() {
        let dims: Vec<usize> = (0..=4).map(|k| dim_a::<Q>(k).unwrap()).collect();
        assert_eq!(dims, vec![1, 0, 1, 1, 3]);
    }

    #[test]
    fn relators_lie_in_the_span() {
        let rs = relation_span::<Q>(3).unwrap();
        for r in four_term_relators(3).unwrap() {
            assert!(rs.contains(&r));
        }
    }

    #[test]
    fn concatenation() {
        let d = ChordDiagram::parse("(1 3)(2 4)").unwrap();
        assert_eq!(d.concat(&ChordDiagram::empty()), d);
        assert_eq!(ChordDiagram::empty().concat(&d), d);
        let iso = ChordDiagram::parse("(1 2)").unwrap();
        assert!(d.concat(&iso).has_isolated_chord());
        assert_eq!(concat_descends::<Q>(2, 1).unwrap(), Ok(10));
    }
}
