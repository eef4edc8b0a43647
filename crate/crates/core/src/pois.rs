//! The Poisson operads `Pois_n`, the homology of the little `n`-disks.
//!
//! `Pois_n(p)` is the multilinear part of the free graded Poisson algebra on
//! generators `x1..xp` of degree 0, with a bracket of degree `d = n - 1`.
//! A basis is given by products of Lie words, one word per block of a set
//! partition of `{1..p}`; each word is left-normed with the minimal letter of
//! its block first (`[[x_a1,x_a2],…],x_ak]`, `a1 = min`).
//!
//! Sign rules, with `|a|` the degree and `ā = |a| + d` the shifted degree:
//!
//! * `a·b = (-1)^{|a||b|} b·a`
//! * `[a,b] = -(-1)^{ā b̄} [b,a]`
//! * `[a,[b,c]] = [[a,b],c] + (-1)^{ā b̄} [b,[a,c]]`
//! * `[a,b·c] = [a,b]·c + (-1)^{|b| ā} b·[a,c]`
//!
//! Partial composition substitutes a monomial for a variable and expands.
//! The substituted element `y` also picks up `(-1)^{|y|·k}` where `k` is the
//! bracket degree written to the right of the variable, which makes parallel
//! compositions commute up to the Koszul sign `(-1)^{|y||z|}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::operad::{Element, MultiplicativeOperad, OperadKey};
use crate::scalar::Scalar;

type Letter = u16;
type Word = Vec<Letter>;
type Blocks = Vec<Word>;
type Raw = Vec<(i64, Blocks)>;

/// A left-normed Lie word whose first letter is the minimum of its block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieWord(Vec<Letter>);

impl LieWord {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for LieWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = format!("x{}", self.0[0]);
        for l in &self.0[1..] {
            s = format!("[{},x{}]", s, l);
        }
        f.write_str(&s)
    }
}

/// A basis monomial of `Pois_n(p)`: blocks ordered by their minimal letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PoisMonomial {
    blocks: Vec<LieWord>,
}

impl PoisMonomial {
    pub fn blocks(&self) -> &[LieWord] {
        &self.blocks
    }

    pub fn arity(&self) -> usize {
        self.blocks.iter().map(LieWord::len).sum()
    }

    /// Number of brackets.
    pub fn complexity(&self) -> usize {
        self.arity() - self.blocks.len()
    }

    pub fn has_singleton(&self) -> bool {
        self.blocks.iter().any(|b| b.len() == 1)
    }

    fn from_canonical_blocks(blocks: Blocks) -> Self {
        PoisMonomial {
            blocks: blocks.into_iter().map(LieWord).collect(),
        }
    }

    fn raw_blocks(&self) -> Blocks {
        self.blocks.iter().map(|b| b.0.clone()).collect()
    }
}

impl fmt::Display for PoisMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        f.write_str(&parts.join("*"))
    }
}

/// Parameters of `Pois_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PoisParameters {
    pub n: usize,
}

impl PoisParameters {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Argument(format!("Pois_n needs n >= 2, got {}", n)));
        }
        Ok(PoisParameters { n })
    }

    pub fn bracket_degree(&self) -> usize {
        self.n - 1
    }
}

/// Sign arithmetic for one parity of the bracket degree.
#[derive(Clone, Copy, Debug)]
struct Signs {
    d: i64,
}

impl Signs {
    fn sgn(e: i64) -> i64 {
        if e.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    fn word_deg(&self, w: &[Letter]) -> i64 {
        (w.len() as i64 - 1) * self.d
    }

    fn word_shifted(&self, w: &[Letter]) -> i64 {
        w.len() as i64 * self.d
    }

    fn mono_deg(&self, bs: &[Word]) -> i64 {
        bs.iter().map(|w| self.word_deg(w)).sum()
    }

    fn mono_shifted(&self, bs: &[Word]) -> i64 {
        self.mono_deg(bs) + self.d
    }

    /// `[U, V]` for left-normed words, as left-normed words all starting with `U`.
    fn bracket_words(&self, u: &[Letter], v: &[Letter]) -> Vec<(i64, Word)> {
        if v.len() == 1 {
            let mut w = u.to_vec();
            w.push(v[0]);
            return vec![(1, w)];
        }
        let (vp, last) = v.split_at(v.len() - 1);
        let mut out: Vec<(i64, Word)> = self
            .bracket_words(u, vp)
            .into_iter()
            .map(|(c, mut w)| {
                w.push(last[0]);
                (c, w)
            })
            .collect();
        // [U,[V',v]] = [[U,V'],v] - (-1)^{V̄' v̄} [[U,v],V']
        let s = -Self::sgn(self.word_shifted(vp) * self.word_shifted(last));
        let mut uv = u.to_vec();
        uv.push(last[0]);
        out.extend(
            self.bracket_words(&uv, vp)
                .into_iter()
                .map(|(c, w)| (s * c, w)),
        );
        out
    }

    /// Rewrite a left-normed word in the minimal-first basis.
    fn normalize_word(&self, w: &[Letter]) -> Vec<(i64, Word)> {
        let j = w
            .iter()
            .enumerate()
            .min_by_key(|(_, l)| **l)
            .map(|(k, _)| k)
            .unwrap_or(0);
        if j == 0 {
            return vec![(1, w.to_vec())];
        }
        let (a, rest) = w.split_at(j);
        let (m, rest) = rest.split_at(1);
        // [A, m] = -(-1)^{Ā m̄} [m, A]
        let s = -Self::sgn(self.word_shifted(a) * self.word_shifted(m));
        self.bracket_words(m, a)
            .into_iter()
            .map(|(c, mut x)| {
                x.extend_from_slice(rest);
                (s * c, x)
            })
            .collect()
    }

    fn bracket_monomials(&self, p: &[Word], q: &[Word]) -> Raw {
        if p.is_empty() || q.is_empty() {
            return Vec::new();
        }
        if q.len() > 1 {
            let (b, qp) = q.split_at(1);
            let mut out: Raw = self
                .bracket_monomials(p, b)
                .into_iter()
                .map(|(c, mut bs)| {
                    bs.extend_from_slice(qp);
                    (c, bs)
                })
                .collect();
            let s = Self::sgn(self.mono_deg(b) * self.mono_shifted(p));
            out.extend(self.bracket_monomials(p, qp).into_iter().map(|(c, bs)| {
                let mut v = b.to_vec();
                v.extend(bs);
                (s * c, v)
            }));
            return out;
        }
        if p.len() > 1 {
            let s = -Self::sgn(self.mono_shifted(p) * self.mono_shifted(q));
            return self
                .bracket_monomials(q, p)
                .into_iter()
                .map(|(c, bs)| (s * c, bs))
                .collect();
        }
        self.bracket_words(&p[0], &q[0])
            .into_iter()
            .map(|(c, w)| (c, vec![w]))
            .collect()
    }

    fn bracket_raw(&self, a: &Raw, b: &Raw) -> Raw {
        let mut out = Vec::new();
        for (ca, pa) in a {
            for (cb, pb) in b {
                out.extend(
                    self.bracket_monomials(pa, pb)
                        .into_iter()
                        .map(|(c, bs)| (ca * cb * c, bs)),
                );
            }
        }
        out
    }

    fn product_raw(&self, a: &Raw, b: &Raw) -> Raw {
        let mut out = Vec::new();
        for (ca, pa) in a {
            for (cb, pb) in b {
                let mut bs = pa.clone();
                bs.extend(pb.iter().cloned());
                out.push((ca * cb, bs));
            }
        }
        out
    }

    /// Collect raw terms into the canonical basis.
    fn canonicalize(&self, terms: Raw) -> BTreeMap<PoisMonomial, i64> {
        let mut acc: HashMap<Blocks, i64> = HashMap::new();
        for (c, blocks) in terms {
            if c == 0 {
                continue;
            }
            let mut expanded: Vec<(i64, Blocks)> = vec![(c, Vec::new())];
            for b in &blocks {
                let nw = self.normalize_word(b);
                expanded = expanded
                    .into_iter()
                    .flat_map(|(c1, bs)| {
                        nw.iter().map(move |(c2, w)| {
                            let mut v = bs.clone();
                            v.push(w.clone());
                            (c1 * c2, v)
                        })
                    })
                    .collect();
            }
            for (c1, mut bs) in expanded {
                let mut s = 1;
                // bubble sort keeps the Koszul sign bookkeeping obvious
                for pass in 0..bs.len() {
                    for k in 0..bs.len().saturating_sub(1 + pass) {
                        if bs[k][0] > bs[k + 1][0] {
                            s *= Self::sgn(self.word_deg(&bs[k]) * self.word_deg(&bs[k + 1]));
                            bs.swap(k, k + 1);
                        }
                    }
                }
                *acc.entry(bs).or_insert(0) += s * c1;
            }
        }
        acc.into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(bs, c)| (PoisMonomial::from_canonical_blocks(bs), c))
            .collect()
    }
}

/// A raw multilinear bracket/product expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PoisExpr {
    Var(usize),
    Unit,
    Bracket(Box<PoisExpr>, Box<PoisExpr>),
    Product(Vec<PoisExpr>),
}

impl PoisExpr {
    pub fn parse(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let e = parse_product(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(Error::Parse(format!(
                "unexpected trailing input at {} in {:?}",
                pos, s
            )));
        }
        Ok(e)
    }

    fn collect_vars(&self, out: &mut Vec<usize>) {
        match self {
            PoisExpr::Var(v) => out.push(*v),
            PoisExpr::Unit => {}
            PoisExpr::Bracket(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            PoisExpr::Product(fs) => fs.iter().for_each(|f| f.collect_vars(out)),
        }
    }
}

fn parse_product(s: &[char], pos: &mut usize) -> Result<PoisExpr> {
    let mut factors = vec![parse_factor(s, pos)?];
    while *pos < s.len() && (s[*pos] == '*' || s[*pos] == '·') {
        *pos += 1;
        factors.push(parse_factor(s, pos)?);
    }
    Ok(if factors.len() == 1 {
        factors.pop().unwrap()
    } else {
        PoisExpr::Product(factors)
    })
}

fn parse_factor(s: &[char], pos: &mut usize) -> Result<PoisExpr> {
    let err = |p: usize, what: &str| Error::Parse(format!("expected {} at position {}", what, p));
    match s.get(*pos) {
        Some('x') => {
            *pos += 1;
            let start = *pos;
            while *pos < s.len() && s[*pos].is_ascii_digit() {
                *pos += 1;
            }
            let digits: String = s[start..*pos].iter().collect();
            let v: usize = digits.parse().map_err(|_| err(start, "variable index"))?;
            if v == 0 {
                return Err(err(start, "positive variable index"));
            }
            Ok(PoisExpr::Var(v))
        }
        Some('e') | Some('1') => {
            *pos += 1;
            Ok(PoisExpr::Unit)
        }
        Some('[') => {
            *pos += 1;
            let a = parse_product(s, pos)?;
            if s.get(*pos) != Some(&',') {
                return Err(err(*pos, "','"));
            }
            *pos += 1;
            let b = parse_product(s, pos)?;
            if s.get(*pos) != Some(&']') {
                return Err(err(*pos, "']'"));
            }
            *pos += 1;
            Ok(PoisExpr::Bracket(Box::new(a), Box::new(b)))
        }
        Some('(') => {
            *pos += 1;
            let a = parse_product(s, pos)?;
            if s.get(*pos) != Some(&')') {
                return Err(err(*pos, "')'"));
            }
            *pos += 1;
            Ok(a)
        }
        _ => Err(err(*pos, "a variable, '[' or '('")),
    }
}

/// `(x, i, y)` for a memoized `x ∘_i y`.
type CompositionKey = (PoisMonomial, usize, PoisMonomial);

/// The operad `Pois_n`.
pub struct PoisOperad {
    params: PoisParameters,
    signs: Signs,
    memo: RwLock<HashMap<CompositionKey, Vec<(PoisMonomial, i64)>>>,
}

impl PoisOperad {
    pub fn new(n: usize) -> Result<Self> {
        let params = PoisParameters::new(n)?;
        Ok(PoisOperad {
            params,
            signs: Signs {
                d: params.bracket_degree() as i64,
            },
            memo: RwLock::new(HashMap::new()),
        })
    }

    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn bracket_degree(&self) -> usize {
        self.params.bracket_degree()
    }

    /// Canonical form of a raw multilinear expression.
    pub fn normalize<F: Scalar>(&self, expr: &PoisExpr) -> Result<Element<PoisMonomial, F>> {
        let mut vars = Vec::new();
        expr.collect_vars(&mut vars);
        let arity = vars.len();
        let mut sorted = vars.clone();
        sorted.sort_unstable();
        if sorted.iter().enumerate().any(|(k, v)| *v != k + 1) {
            return Err(Error::Argument(format!(
                "expression is not multilinear in x1..x{}: variables {:?}",
                arity, vars
            )));
        }
        let raw = self.eval(expr);
        Ok(self.to_element(arity, self.signs.canonicalize(raw)))
    }

    pub fn parse_element<F: Scalar>(&self, s: &str) -> Result<Element<PoisMonomial, F>> {
        self.normalize(&PoisExpr::parse(s)?)
    }

    fn eval(&self, expr: &PoisExpr) -> Raw {
        match expr {
            PoisExpr::Var(v) => vec![(1, vec![vec![*v as Letter]])],
            PoisExpr::Unit => vec![(1, Vec::new())],
            PoisExpr::Bracket(a, b) => self.signs.bracket_raw(&self.eval(a), &self.eval(b)),
            PoisExpr::Product(fs) => fs.iter().fold(vec![(1, Vec::new())], |acc, f| {
                self.signs.product_raw(&acc, &self.eval(f))
            }),
        }
    }

    fn to_element<F: Scalar>(
        &self,
        arity: usize,
        terms: BTreeMap<PoisMonomial, i64>,
    ) -> Element<PoisMonomial, F> {
        Element::from_terms(
            self.key(),
            arity,
            terms.into_iter().map(|(m, c)| (m, F::from_i64(c))),
        )
    }

    /// `x ∘_i y` by substitution and expansion.
    pub fn substitute<F: Scalar>(
        &self,
        x: &Element<PoisMonomial, F>,
        i: usize,
        y: &Element<PoisMonomial, F>,
    ) -> Result<Element<PoisMonomial, F>> {
        crate::operad::compose(self, x, i, y)
    }

    fn substitute_basis(&self, x: &PoisMonomial, i: usize, y: &PoisMonomial) -> Raw {
        let r = y.arity();
        let relabel = |v: Letter| -> Letter {
            if (v as usize) < i {
                v
            } else {
                v + r as Letter - 1
            }
        };
        let shifted: Blocks = y
            .blocks
            .iter()
            .map(|b| b.0.iter().map(|l| l + i as Letter - 1).collect())
            .collect();

        let (bi, pos) = x
            .blocks
            .iter()
            .enumerate()
            .find_map(|(k, b)| b.0.iter().position(|&l| l as usize == i).map(|t| (k, t)))
            .expect("slot is a letter of the monomial");
        let commas_right = (x.blocks[bi].len() - 1 - pos)
            + x.blocks[bi + 1..]
                .iter()
                .map(|b| b.len() - 1)
                .sum::<usize>();
        let sign = Signs::sgn(self.signs.mono_deg(&shifted) * commas_right as i64);

        let value = |l: Letter| -> Raw {
            if l as usize == i {
                vec![(1, shifted.clone())]
            } else {
                vec![(1, vec![vec![relabel(l)]])]
            }
        };
        let word = &x.blocks[bi].0;
        let mut inner = value(word[0]);
        for &l in &word[1..] {
            inner = self.signs.bracket_raw(&inner, &value(l));
        }
        let before: Blocks = x.blocks[..bi]
            .iter()
            .map(|b| b.0.iter().map(|&l| relabel(l)).collect())
            .collect();
        let after: Blocks = x.blocks[bi + 1..]
            .iter()
            .map(|b| b.0.iter().map(|&l| relabel(l)).collect())
            .collect();
        inner
            .into_iter()
            .map(|(c, bs)| {
                let mut v = before.clone();
                v.extend(bs);
                v.extend(after.iter().cloned());
                (sign * c, v)
            })
            .collect()
    }

    /// Monomials of arity `p` with exactly `blocks` blocks.
    fn basis_with_blocks(&self, p: usize, blocks: Option<usize>) -> Vec<PoisMonomial> {
        let mut out = Vec::new();
        let letters: Vec<Letter> = (1..=p as Letter).collect();
        for part in set_partitions(&letters) {
            if blocks.is_some_and(|b| b != part.len()) {
                continue;
            }
            let choices: Vec<Vec<Word>> = part
                .iter()
                .map(|b| {
                    permutations(&b[1..])
                        .into_iter()
                        .map(|rest| {
                            let mut w = vec![b[0]];
                            w.extend(rest);
                            w
                        })
                        .collect()
                })
                .collect();
            let mut combos: Vec<Blocks> = vec![Vec::new()];
            for c in &choices {
                combos = combos
                    .into_iter()
                    .flat_map(|acc| {
                        c.iter().map(move |w| {
                            let mut v = acc.clone();
                            v.push(w.clone());
                            v
                        })
                    })
                    .collect();
            }
            out.extend(combos.into_iter().map(PoisMonomial::from_canonical_blocks));
        }
        out.sort_by(|a, b| a.complexity().cmp(&b.complexity()).then(a.cmp(b)));
        out
    }
}

impl MultiplicativeOperad for PoisOperad {
    type Monomial = PoisMonomial;

    fn key(&self) -> OperadKey {
        OperadKey(self.params.n as u64)
    }

    fn name(&self) -> String {
        format!("pois{}", self.params.n)
    }

    fn degree_step(&self) -> usize {
        self.bracket_degree()
    }

    fn basis(&self, arity: usize) -> Vec<PoisMonomial> {
        self.basis_with_blocks(arity, None)
    }

    fn basis_in_degree(&self, arity: usize, degree: usize) -> Vec<PoisMonomial> {
        let d = self.bracket_degree();
        if !degree.is_multiple_of(d) {
            return Vec::new();
        }
        let m = degree / d;
        if arity == 0 {
            return if m == 0 { self.basis(0) } else { Vec::new() };
        }
        if m >= arity {
            return Vec::new();
        }
        self.basis_with_blocks(arity, Some(arity - m))
    }

    fn arity(&self, m: &PoisMonomial) -> usize {
        m.arity()
    }

    fn degree(&self, m: &PoisMonomial) -> usize {
        m.complexity() * self.bracket_degree()
    }

    fn compose_basis(
        &self,
        x: &PoisMonomial,
        i: usize,
        y: &PoisMonomial,
    ) -> Vec<(PoisMonomial, i64)> {
        let key = (x.clone(), i, y.clone());
        if let Some(v) = self.memo.read().expect("memo lock").get(&key) {
            return v.clone();
        }
        let raw = self.substitute_basis(x, i, y);
        let out: Vec<(PoisMonomial, i64)> = self.signs.canonicalize(raw).into_iter().collect();
        self.memo
            .write()
            .expect("memo lock")
            .insert(key, out.clone());
        out
    }

    fn identity(&self) -> PoisMonomial {
        self.mu(1)
    }

    fn mu(&self, k: usize) -> PoisMonomial {
        PoisMonomial::from_canonical_blocks((1..=k as Letter).map(|l| vec![l]).collect())
    }

    fn parse_monomial(&self, s: &str) -> Result<PoisMonomial> {
        let e: Element<PoisMonomial, num_rational::BigRational> = self.parse_element(s)?;
        let mut it = e.terms().iter();
        match (it.next(), it.next()) {
            (Some((m, c)), None)
                if num_traits::One::is_one(c)
                    && m.to_string()
                        == s.chars().filter(|c| !c.is_whitespace()).collect::<String>() =>
            {
                Ok(m.clone())
            }
            _ => Err(Error::Parse(format!(
                "{:?} is not a canonical basis monomial (normal form: {})",
                s, e
            ))),
        }
    }

    fn normalized_is_empty(&self, arity: usize, degree: usize) -> bool {
        let d = self.bracket_degree();
        if !degree.is_multiple_of(d) {
            return true;
        }
        let m = degree / d;
        if arity == 0 {
            return m != 0;
        }
        !(m < arity && arity <= 2 * m)
    }

    fn normalized_basis(&self, arity: usize, degree: usize) -> Vec<PoisMonomial> {
        if self.normalized_is_empty(arity, degree) {
            return Vec::new();
        }
        self.basis_in_degree(arity, degree)
            .into_iter()
            .filter(|m| !m.has_singleton())
            .collect()
    }
}

fn set_partitions(letters: &[Letter]) -> Vec<Vec<Word>> {
    if letters.is_empty() {
        return vec![Vec::new()];
    }
    let first = letters[0];
    let mut out = Vec::new();
    for sub in set_partitions(&letters[1..]) {
        let mut alone = vec![vec![first]];
        alone.extend(sub.iter().cloned());
        out.push(alone);
        for k in 0..sub.len() {
            let mut v = sub.clone();
            v[k].insert(0, first);
            out.push(v);
        }
    }
    // blocks by minimal element
    for p in out.iter_mut() {
        p.sort();
    }
    out
}

fn permutations(items: &[Letter]) -> Vec<Word> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(k);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

impl PoisMonomial {
    /// The raw blocks, used when serializing.
    pub fn words(&self) -> Blocks {
        self.raw_blocks()
    }
}
