//! Sparse multivariate polynomials over a field scalar, the input grammar,
//! the linear group action, semi-invariance and weights, R-ideal
//! specifications, and invariant generators.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::Cyclo;
use crate::group::FiniteGroup;
use crate::linalg::Matrix;
use crate::scalar::{FieldScalar, Rat};

/// An exponent vector. Ordered by degrevlex; the largest monomial leads.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        Monomial(self.0.iter().map(|&e| e * k).collect())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        // degrevlex tie-break: the last differing exponent decides,
        // with the smaller exponent on the larger monomial.
        for k in (0..self.0.len()).rev() {
            match self.0[k].cmp(&other.0[k]) {
                Ordering::Equal => {}
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

/// A sparse polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SparsePoly<K> {
    pub nvars: usize,
    pub terms: BTreeMap<Monomial, K>,
}

impl<K: FieldScalar> SparsePoly<K> {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: K) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(nvars, i), K::one());
        p
    }

    pub fn monomial(nvars: usize, m: Monomial, c: K) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        SparsePoly { nvars: self.nvars, terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
            .collect();
        SparsePoly { nvars: self.nvars, terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.nvars, K::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Monomial, &K)> {
        self.terms.iter().next_back()
    }

    /// Substitutes images[i] for x_i. Images define the output variable
    /// count and must agree among themselves.
    pub fn substitute(&self, images: &[Self]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let out_nvars = images.first().map_or(self.nvars, |p| p.nvars);
        let mut out = Self::zero(out_nvars);
        for (m, c) in &self.terms {
            let mut term = Self::constant(out_nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&images[i]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            let mut factor = K::zero();
            for _ in 0..e {
                factor = factor + K::one();
            }
            out.add_term(m2, c.clone() * factor);
        }
        out
    }

    pub fn map_coeffs<K2: FieldScalar, F: Fn(&K) -> K2>(&self, f: F) -> SparsePoly<K2> {
        let mut out = SparsePoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Evaluates at a point.
    pub fn eval(&self, point: &[K]) -> K {
        assert_eq!(point.len(), self.nvars);
        let mut acc = K::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = t * point[i].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// The single (monomial, coefficient) pair of a one-term polynomial.
    pub fn as_monomial(&self) -> Option<(&Monomial, &K)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }
}

pub type CPoly = SparsePoly<Cyclo>;

fn fmt_mono(m: &Monomial, out: &mut String) {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(&format!("x{}", i + 1));
        if e > 1 {
            out.push_str(&format!("^{e}"));
        }
    }
}

impl CPoly {
    /// Renders in the input grammar, leading term first.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let (neg, abs) = match c.as_rat() {
                Some(r) if r.is_negative() => (true, Cyclo::from_rat(r.abs())),
                _ => (false, c.clone()),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_str = format!("{abs}");
            let coeff_is_simple = abs.as_rat().is_some();
            if m.is_one() {
                if coeff_is_simple {
                    out.push_str(&coeff_str);
                } else {
                    out.push_str(&format!("({coeff_str})"));
                }
            } else {
                if !abs.is_one() {
                    if coeff_is_simple && !coeff_str.contains('/') {
                        out.push_str(&coeff_str);
                    } else {
                        out.push_str(&format!("({coeff_str})"));
                    }
                    out.push('*');
                }
                fmt_mono(m, &mut out);
            }
        }
        out
    }
}

impl fmt::Display for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

// ---------------------------------------------------------------------------
// Input grammar
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rat),
    Var(usize),
    Z,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn read_uint(&mut self) -> Option<num_bigint::BigInt> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).ok()?;
        s.parse().ok()
    }

    fn next(&mut self) -> Result<(usize, Tok)> {
        self.skip_ws();
        let at = self.pos;
        if self.pos >= self.bytes.len() {
            return Ok((at, Tok::End));
        }
        let b = self.bytes[self.pos];
        let tok = match b {
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'-' => {
                self.pos += 1;
                Tok::Minus
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            b'^' => {
                self.pos += 1;
                Tok::Caret
            }
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'z' => {
                self.pos += 1;
                Tok::Z
            }
            b't' => {
                return Err(Error::SyntaxError {
                    offset: at,
                    message: "`t` is reserved for twisted equations".into(),
                })
            }
            b'x' => {
                self.pos += 1;
                let idx_at = self.pos;
                let Some(n) = self.read_uint() else {
                    return Err(Error::SyntaxError {
                        offset: idx_at,
                        message: "expected variable index after `x`".into(),
                    });
                };
                let n = usize::try_from(&n).unwrap_or(usize::MAX);
                if n == 0 || n > self.nvars {
                    return Err(Error::UnknownVariable { offset: at, name: format!("x{n}") });
                }
                Tok::Var(n - 1)
            }
            b'0'..=b'9' => {
                let num = self.read_uint().expect("digit present");
                let save = self.pos;
                self.skip_ws();
                if self.pos < self.bytes.len() && self.bytes[self.pos] == b'/' {
                    self.pos += 1;
                    self.skip_ws();
                    let den_at = self.pos;
                    let Some(den) = self.read_uint() else {
                        return Err(Error::SyntaxError {
                            offset: den_at,
                            message: "expected denominator".into(),
                        });
                    };
                    if den.is_zero() {
                        return Err(Error::SyntaxError {
                            offset: den_at,
                            message: "zero denominator".into(),
                        });
                    }
                    Tok::Num(Rat::new(num, den))
                } else {
                    self.pos = save;
                    Tok::Num(Rat::from_integer(num))
                }
            }
            other => {
                return Err(Error::SyntaxError {
                    offset: at,
                    message: format!("unexpected character `{}`", other as char),
                })
            }
        };
        Ok((at, tok))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    cur: (usize, Tok),
    nvars: usize,
    m: u32,
}

impl<'a> Parser<'a> {
    fn bump(&mut self) -> Result<()> {
        self.cur = self.lexer.next()?;
        Ok(())
    }

    fn expr(&mut self) -> Result<CPoly> {
        let mut neg = false;
        if self.cur.1 == Tok::Minus {
            neg = true;
            self.bump()?;
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            match self.cur.1 {
                Tok::Plus => {
                    self.bump()?;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Tok::Minus => {
                    self.bump()?;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<CPoly> {
        let mut acc = self.factor()?;
        while self.cur.1 == Tok::Star {
            self.bump()?;
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<CPoly> {
        let base = self.atom()?;
        if self.cur.1 == Tok::Caret {
            self.bump()?;
            let (at, tok) = self.cur.clone();
            let Tok::Num(r) = tok else {
                return Err(Error::SyntaxError { offset: at, message: "expected exponent".into() });
            };
            if !r.is_integer() || r.is_negative() {
                return Err(Error::SyntaxError {
                    offset: at,
                    message: "exponent must be a non-negative integer".into(),
                });
            }
            let e = u32::try_from(r.to_integer()).map_err(|_| Error::SyntaxError {
                offset: at,
                message: "exponent too large".into(),
            })?;
            self.bump()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<CPoly> {
        let (at, tok) = self.cur.clone();
        match tok {
            Tok::LParen => {
                self.bump()?;
                let e = self.expr()?;
                if self.cur.1 != Tok::RParen {
                    return Err(Error::SyntaxError {
                        offset: self.cur.0,
                        message: "expected `)`".into(),
                    });
                }
                self.bump()?;
                Ok(e)
            }
            Tok::Minus => {
                self.bump()?;
                Ok(self.atom()?.neg())
            }
            Tok::Num(r) => {
                self.bump()?;
                Ok(CPoly::constant(self.nvars, Cyclo::from_rat_of(self.m, r)))
            }
            Tok::Z => {
                self.bump()?;
                Ok(CPoly::constant(self.nvars, Cyclo::root(self.m, 1)))
            }
            Tok::Var(i) => {
                self.bump()?;
                let mut p = CPoly::zero(self.nvars);
                p.terms.insert(Monomial::var(self.nvars, i), Cyclo::one_of(self.m));
                Ok(p)
            }
            Tok::End => Err(Error::SyntaxError { offset: at, message: "unexpected end of input".into() }),
            _ => Err(Error::SyntaxError { offset: at, message: "expected a term".into() }),
        }
    }
}

/// Parses the polynomial grammar over Q(zeta_m) in variables x1..xN.
pub fn parse_poly(text: &str, nvars: usize, m: u32) -> Result<CPoly> {
    let lexer = Lexer { bytes: text.as_bytes(), pos: 0, nvars };
    let mut parser = Parser { lexer, cur: (0, Tok::End), nvars, m };
    parser.bump()?;
    let e = parser.expr()?;
    if parser.cur.1 != Tok::End {
        return Err(Error::SyntaxError {
            offset: parser.cur.0,
            message: "trailing input".into(),
        });
    }
    Ok(e)
}

// ---------------------------------------------------------------------------
// Group action, semi-invariance, weights
// ---------------------------------------------------------------------------

/// act(gamma, f) = f(gamma . x): substitutes the variable column by
/// gamma applied to it.
pub fn act(mat: &Matrix<Cyclo>, f: &CPoly) -> CPoly {
    assert_eq!(mat.rows, f.nvars);
    let images: Vec<CPoly> = (0..f.nvars)
        .map(|i| {
            let mut p = CPoly::zero(f.nvars);
            for j in 0..f.nvars {
                let c = mat.at(i, j);
                if !c.is_zero() {
                    p.add_term(Monomial::var(f.nvars, j), c.clone());
                }
            }
            p
        })
        .collect();
    f.substitute(&images)
}

/// The exponent a with act(gamma, f) = zeta_d^a f, for one element.
pub fn character_exponent(group: &FiniteGroup, idx: usize, f: &CPoly) -> Result<u32> {
    let d = group.order() as u32;
    let g = act(&group.elements[idx].mat, f);
    let (m0, c0) = f.leading().ok_or_else(|| Error::Internal("zero polynomial".into()))?;
    let Some(c1) = g.terms.get(m0) else {
        return Err(Error::NotSemiInvariant { witness: idx });
    };
    let s = c1.clone() / c0.clone();
    if g != f.scale(&s) {
        return Err(Error::NotSemiInvariant { witness: idx });
    }
    s.root_of_unity_log(d).map_err(|_| Error::NotSemiInvariant { witness: idx })
}

/// Characters a_gamma for every element, or rejection with a witness.
pub fn semi_invariant_character(group: &FiniteGroup, f: &CPoly) -> Result<Vec<u32>> {
    assert!(!f.is_zero());
    (0..group.order()).map(|i| character_exponent(group, i, f)).collect()
}

/// w_gamma(f) = a/d in [0, 1).
pub fn weight(group: &FiniteGroup, idx: usize, f: &CPoly) -> Result<Rat> {
    let a = character_exponent(group, idx, f)?;
    Ok(Rat::new((a as u64).into(), (group.order() as u64).into()))
}

/// w_gamma(f_1) + ... + w_gamma(f_c); not reduced modulo 1.
pub fn weight_total(group: &FiniteGroup, idx: usize, fs: &[CPoly]) -> Result<Rat> {
    let mut acc = Rat::zero();
    for f in fs {
        acc += weight(group, idx, f)?;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// R-ideals
// ---------------------------------------------------------------------------

/// One factor a_i^{delta_i} of a formal product of ideals.
#[derive(Clone, Debug)]
pub struct RIdealFactor {
    pub gens: Vec<CPoly>,
    pub exp: Rat,
}

/// A formal product prod a_i^{delta_i} with positive rational exponents.
#[derive(Clone, Debug, Default)]
pub struct RIdealSpec {
    pub factors: Vec<RIdealFactor>,
}

impl RIdealSpec {
    pub fn unit() -> Self {
        RIdealSpec { factors: Vec::new() }
    }

    pub fn new(factors: Vec<RIdealFactor>) -> Result<Self> {
        for f in &factors {
            if f.gens.iter().all(|g| g.is_zero()) {
                return Err(Error::Internal("R-ideal factor with no nonzero generator".into()));
            }
            if f.exp <= Rat::zero() {
                return Err(Error::Internal("R-ideal exponent must be positive".into()));
            }
        }
        Ok(RIdealSpec { factors })
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }
}

// ---------------------------------------------------------------------------
// Invariant generators
// ---------------------------------------------------------------------------

fn monomials_up_to(nvars: usize, bound: u64) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(out: &mut Vec<Monomial>, cur: &mut Vec<u32>, i: usize, left: u64) {
        if i == cur.len() {
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[i] = e as u32;
            rec(out, cur, i + 1, left - e);
        }
        cur[i] = 0;
    }
    rec(&mut out, &mut cur, 0, bound);
    out.retain(|m| !m.is_one());
    out.sort();
    out
}

/// Generators of the maximal ideal of the invariant ring, up to the given
/// degree bound (default |G|, the Noether bound).
///
/// Diagonal groups get the exact Hilbert-basis monomials of the invariant
/// monoid; general groups get a Reynolds-averaged, linearly reduced
/// spanning set of invariants of degree <= bound.
pub fn invariant_generators(group: &FiniteGroup, bound: u64) -> Vec<CPoly> {
    let n = group.n;
    let d = group.order() as u64;
    let all_diag = group.elements.iter().all(|el| {
        (0..n).all(|i| (0..n).all(|j| i == j || el.mat.at(i, j).is_zero()))
    });

    if all_diag {
        // exponent vectors of the generators
        let gens_exps: Vec<Vec<u64>> = group
            .generators
            .iter()
            .map(|&g| {
                (0..n)
                    .map(|i| {
                        group.elements[g].mat.at(i, i).root_of_unity_log(d as u32).expect(
                            "diagonal entries are roots of unity of order dividing |G|",
                        ) as u64
                    })
                    .collect()
            })
            .collect();
        let is_invariant = |m: &Monomial| {
            gens_exps.iter().all(|e| {
                let s: u64 = e.iter().zip(&m.0).map(|(a, &b)| a * b as u64).sum();
                s % d == 0
            })
        };
        let mut basis: Vec<Monomial> = Vec::new();
        for m in monomials_up_to(n, bound) {
            if !is_invariant(&m) {
                continue;
            }
            // Hilbert-basis minimality: not a product of two smaller
            // invariant monomials.
            let splittable = basis.iter().any(|b| {
                b.0.iter().zip(&m.0).all(|(&x, &y)| x <= y) && {
                    let rest = Monomial(m.0.iter().zip(&b.0).map(|(&y, &x)| y - x).collect());
                    rest.is_one() || is_invariant(&rest)
                }
            });
            if !splittable {
                basis.push(m);
            }
        }
        basis
            .into_iter()
            .map(|m| CPoly::monomial(n, m, Cyclo::one_of(group.cyclo_order)))
            .collect()
    } else {
        // Reynolds operator on each monomial, then linear reduction.
        let monos = monomials_up_to(n, bound);
        let dinv = Cyclo::from_rat(Rat::new(1.into(), (d as i64).into()));
        let mut reduced: Vec<CPoly> = Vec::new();
        for m in monos {
            let mono = CPoly::monomial(n, m, Cyclo::one_of(group.cyclo_order));
            let mut avg = CPoly::zero(n);
            for el in &group.elements {
                avg = avg.add(&act(&el.mat, &mono));
            }
            let mut avg = avg.scale(&dinv);
            // reduce against the basis found so far
            for b in &reduced {
                let (bm, bc) = b.leading().expect("basis polynomials nonzero");
                if let Some(c) = avg.terms.get(bm).cloned() {
                    let f = c / bc.clone();
                    avg = avg.sub(&b.scale(&f));
                }
            }
            if !avg.is_zero() {
                reduced.push(avg);
                reduced.sort_by(|a, b| b.leading().unwrap().0.cmp(a.leading().unwrap().0));
            }
        }
        reduced
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_i;

    fn cmat(n: usize, entries: &[i64]) -> Matrix<Cyclo> {
        Matrix::new(n, n, entries.iter().map(|&e| Cyclo::from_int(e)).collect())
    }

    #[test]
    fn degrevlex_order() {
        let m = |e: &[u32]| Monomial(e.to_vec());
        // x1 > x2 > x3
        assert!(m(&[1, 0, 0]) > m(&[0, 1, 0]));
        assert!(m(&[0, 1, 0]) > m(&[0, 0, 1]));
        // degree dominates
        assert!(m(&[0, 0, 2]) > m(&[1, 0, 0]));
        // x2^2 > x1*x3 in degrevlex
        assert!(m(&[0, 2, 0]) > m(&[1, 0, 1]));
    }

    #[test]
    fn parse_examples() {
        let f = parse_poly("x1*x2 - x3^2", 3, 1).unwrap();
        assert_eq!(f.terms.len(), 2);
        assert_eq!(f.terms.get(&Monomial(vec![1, 1, 0])), Some(&Cyclo::from_int(1)));
        assert_eq!(f.terms.get(&Monomial(vec![0, 0, 2])), Some(&Cyclo::from_int(-1)));
        assert_eq!(f.render(), "x1*x2 - x3^2");

        let g = parse_poly("z^2*x1^2", 2, 3).unwrap();
        assert_eq!(g.terms.get(&Monomial(vec![2, 0])), Some(&Cyclo::root(3, 2)));

        assert_eq!(
            parse_poly("x1 + + x2", 2, 1),
            Err(Error::SyntaxError { offset: 5, message: "expected a term".into() })
        );
        assert!(matches!(
            parse_poly("x7", 3, 1),
            Err(Error::UnknownVariable { offset: 0, .. })
        ));
        assert!(parse_poly("3/4*x1 - 1/2", 1, 1).is_ok());
        assert!(parse_poly("t*x1", 1, 1).is_err());
        // whitespace-insensitive
        assert_eq!(
            parse_poly("  x1 *x2-x3 ^2 ", 3, 1).unwrap(),
            parse_poly("x1*x2-x3^2", 3, 1).unwrap()
        );
    }

    #[test]
    fn act_examples() {
        let f = parse_poly("x1*x2", 2, 1).unwrap();
        let id = cmat(2, &[1, 0, 0, 1]);
        assert_eq!(act(&id, &f), f);

        let minus = cmat(2, &[-1, 0, 0, -1]);
        assert_eq!(act(&minus, &f), f);

        let swap = cmat(2, &[0, 1, 1, 0]);
        let x1sq = parse_poly("x1^2", 2, 1).unwrap();
        let x2sq = parse_poly("x2^2", 2, 1).unwrap();
        assert_eq!(act(&swap, &x1sq), x2sq);
    }

    #[test]
    fn action_composition_convention() {
        // act(gh, f) = act(h, act(g, f)) for the substitution action.
        let a = cmat(2, &[0, 1, 1, 0]);
        let b = cmat(2, &[-1, 0, 0, 1]);
        let f = parse_poly("x1^2*x2 + 3*x2", 2, 1).unwrap();
        let ab = a.mul(&b);
        assert_eq!(act(&ab, &f), act(&b, &act(&a, &f)));
    }

    #[test]
    fn semi_invariance_examples() {
        let g = FiniteGroup::close(2, vec![cmat(2, &[-1, 0, 0, -1])], 10).unwrap();
        let x1 = parse_poly("x1", 2, 1).unwrap();
        let chars = semi_invariant_character(&g, &x1).unwrap();
        let gen = g.generators[0];
        assert_eq!(chars[gen], 1);
        assert_eq!(chars[g.identity_index()], 0);
        assert_eq!(weight(&g, gen, &x1).unwrap(), Rat::new(1.into(), 2.into()));

        let g3 = FiniteGroup::cyclic(3, &[1, 1, 1], 10).unwrap();
        let f = parse_poly("x1^2+x2^2+x3^2", 3, 3).unwrap();
        let chars = semi_invariant_character(&g3, &f).unwrap();
        assert_eq!(chars[g3.generators[0]], 2);
        assert_eq!(
            weight(&g3, g3.generators[0], &f).unwrap(),
            Rat::new(2.into(), 3.into())
        );

        let mixed = parse_poly("x1 + x1*x2", 2, 1).unwrap();
        assert!(matches!(
            semi_invariant_character(&g, &mixed),
            Err(Error::NotSemiInvariant { .. })
        ));
    }

    #[test]
    fn weight_total_examples() {
        let g3 = FiniteGroup::cyclic(3, &[1, 1, 1], 10).unwrap();
        let gen = g3.generators[0];
        assert_eq!(weight_total(&g3, gen, &[]).unwrap(), Rat::zero());
        let f = parse_poly("x1^2+x2^2+x3^2", 3, 3).unwrap();
        // two copies: 2/3 + 2/3 = 4/3, not reduced mod 1
        assert_eq!(
            weight_total(&g3, gen, &[f.clone(), f]).unwrap(),
            Rat::new(4.into(), 3.into())
        );
    }

    #[test]
    fn character_is_homomorphism() {
        let g = FiniteGroup::cyclic(6, &[1, 5], 100).unwrap();
        let f = parse_poly("x1*x2", 2, 6).unwrap();
        let chars = semi_invariant_character(&g, &f).unwrap();
        let d = g.order() as u32;
        for a in 0..g.order() {
            for b in 0..g.order() {
                let ab = g.product(a, b);
                assert_eq!((chars[a] + chars[b]) % d, chars[ab]);
            }
        }
    }

    #[test]
    fn fd_power_is_invariant() {
        let g = FiniteGroup::close(2, vec![cmat(2, &[-1, 0, 0, -1])], 10).unwrap();
        let x1 = parse_poly("x1", 2, 1).unwrap();
        let x1d = x1.pow(g.order() as u32);
        let chars = semi_invariant_character(&g, &x1d).unwrap();
        assert!(chars.iter().all(|&a| a == 0));
    }

    #[test]
    fn invariant_generator_examples() {
        // trivial group: the variables themselves
        let t = FiniteGroup::trivial(2);
        let gens = invariant_generators(&t, 1);
        assert_eq!(gens.len(), 2);

        // <diag(-1,-1)>: x1^2, x1*x2, x2^2
        let g = FiniteGroup::close(2, vec![cmat(2, &[-1, 0, 0, -1])], 10).unwrap();
        let gens = invariant_generators(&g, g.order() as u64);
        let rendered: Vec<String> = gens.iter().map(|p| p.render()).collect();
        assert_eq!(rendered.len(), 3);
        assert!(rendered.contains(&"x1^2".to_string()));
        assert!(rendered.contains(&"x1*x2".to_string()));
        assert!(rendered.contains(&"x2^2".to_string()));

        // <diag(z3, z3)>: the four cubics
        let g3 = FiniteGroup::cyclic(3, &[1, 1], 10).unwrap();
        let gens = invariant_generators(&g3, 3);
        assert_eq!(gens.len(), 4);
        assert!(gens.iter().all(|p| p.total_degree() == 3));

        // every output is pointwise invariant
        for grp in [&g, &g3] {
            for p in invariant_generators(grp, grp.order() as u64) {
                for el in &grp.elements {
                    assert_eq!(act(&el.mat, &p), p);
                }
            }
        }

        // Reynolds path: the swap group in GL_2
        let sw = FiniteGroup::close(2, vec![cmat(2, &[0, 1, 1, 0])], 10).unwrap();
        let gens = invariant_generators(&sw, 2);
        assert!(!gens.is_empty());
        for p in &gens {
            for el in &sw.elements {
                assert_eq!(&act(&el.mat, p), p);
            }
        }
    }
}
