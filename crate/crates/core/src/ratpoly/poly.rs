use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{PolyError, Rational};

/// Ordered, duplicate-free list of variable names. Cheap to clone.
#[derive(Clone, Debug)]
pub struct VarContext {
    names: Arc<Vec<String>>,
}

impl PartialEq for VarContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for VarContext {}

impl VarContext {
    pub fn new<I, S>(names: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        Ok(Self {
            names: Arc::new(names),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(&self, name: &str) -> Result<Poly, PolyError> {
        let i = self
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(self.var_at(i))
    }

    pub fn var_at(&self, i: usize) -> Poly {
        assert!(i < self.len(), "variable index out of range");
        Poly::from_term(self, Monomial::var(self.len(), i), Rational::one())
    }

    pub fn vars(&self) -> Vec<Poly> {
        (0..self.len()).map(|i| self.var_at(i)).collect()
    }
}

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then larger exponent on an earlier variable wins.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    /// `Some(i)` when the monomial is a pure power of variable `i`.
    pub fn single_variable(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over ℚ. Terms are keyed by monomial in ascending
/// graded-lex order; no zero coefficient is ever stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    ctx: VarContext,
    terms: BTreeMap<Monomial, Rational>,
}

impl std::hash::Hash for VarContext {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.names.hash(state)
    }
}

impl Poly {
    pub fn zero(ctx: &VarContext) -> Self {
        Poly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &VarContext) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: &VarContext, c: Rational) -> Self {
        Self::from_term(ctx, Monomial::one(ctx.len()), c)
    }

    pub fn from_term(ctx: &VarContext, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), ctx.len(), "monomial length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly {
            ctx: ctx.clone(),
            terms,
        }
    }

    pub fn from_terms<I>(ctx: &VarContext, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            assert_eq!(m.0.len(), ctx.len(), "monomial length");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn context(&self) -> &VarContext {
        &self.ctx
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.coefficient(&Monomial::one(self.ctx.len())))
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Indices of the variables that occur, ascending.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.ctx.len())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    pub fn contains_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    fn check_ctx(&self, other: &Poly) {
        assert!(
            self.ctx == other.ctx,
            "polynomials from different variable contexts"
        );
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ctx);
        }
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ctx);
        }
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(&self.ctx);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Leading coefficient scaled to 1. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] -= 1;
            out.add_term(m2, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.ctx.len() {
            return Err(PolyError::PointLength {
                expected: self.ctx.len(),
                got: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Replace variables by index. Unmapped variables are kept.
    pub fn substitute_indexed(&self, subs: &BTreeMap<usize, Poly>) -> Poly {
        if subs.is_empty() || subs.keys().all(|&v| !self.contains_var(v)) {
            return self.clone();
        }
        for p in subs.values() {
            self.check_ctx(p);
        }
        let mut cache: BTreeMap<(usize, u32), Poly> = BTreeMap::new();
        let mut out = Poly::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut kept = m.clone();
            let mut term = Poly::one(&self.ctx);
            for (&v, p) in subs {
                let e = m.0[v];
                if e == 0 {
                    continue;
                }
                kept.0[v] = 0;
                let pw = cache.entry((v, e)).or_insert_with(|| p.pow(e));
                term = &term * &*pw;
            }
            let term = term.mul_term(&kept, c);
            out = &out + &term;
        }
        out
    }

    /// Replace variables by name.
    pub fn substitute(&self, subs: &BTreeMap<String, Poly>) -> Result<Poly, PolyError> {
        let mut idx = BTreeMap::new();
        for (name, p) in subs {
            let i = self
                .ctx
                .index_of(name)
                .ok_or_else(|| PolyError::UnknownVariable(name.clone()))?;
            if p.ctx != self.ctx {
                return Err(PolyError::ContextMismatch);
            }
            idx.insert(i, p.clone());
        }
        Ok(self.substitute_indexed(&idx))
    }

    /// Multivariate division by a single divisor: `self = q·divisor + r`,
    /// where no term of `r` is divisible by the leading monomial of `divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly), PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.ctx != divisor.ctx {
            return Err(PolyError::ContextMismatch);
        }
        let (lm, lc) = divisor.leading_term().expect("nonzero divisor");
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut p = self.clone();
        let mut q = Poly::zero(&self.ctx);
        let mut r = Poly::zero(&self.ctx);
        while let Some((m, c)) = p.leading_term() {
            let (m, c) = (m.clone(), c.clone());
            if let Some(qm) = lm.quotient_of(&m) {
                let qc = &c / &lc;
                p = &p - &divisor.mul_term(&qm, &qc);
                q.add_term(qm, qc);
            } else {
                p.terms.remove(&m);
                r.add_term(m, c);
            }
        }
        Ok((q, r))
    }

    /// `self / divisor` when the division is exact.
    pub fn exact_divide(&self, divisor: &Poly) -> Result<Poly, PolyError> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NotDivisible)
        }
    }

    /// Remainder under division by an ordered list; at each step the first
    /// divisor whose leading monomial divides the current leading term is used.
    pub fn reduce_by(&self, divisors: &[Poly]) -> Poly {
        let divs: Vec<(&Poly, Monomial, Rational)> = divisors
            .iter()
            .filter_map(|d| {
                self.check_ctx(d);
                d.leading_term().map(|(m, c)| (d, m.clone(), c.clone()))
            })
            .collect();
        let mut p = self.clone();
        let mut r = Poly::zero(&self.ctx);
        while let Some((m, c)) = p.leading_term() {
            let (m, c) = (m.clone(), c.clone());
            match divs.iter().find_map(|(d, lm, lc)| {
                lm.quotient_of(&m).map(|qm| (d, qm, &c / lc))
            }) {
                Some((d, qm, qc)) => p = &p - &d.mul_term(&qm, &qc),
                None => {
                    p.terms.remove(&m);
                    r.add_term(m, c);
                }
            }
        }
        r
    }

    /// Coefficients with respect to one variable: entry k multiplies `var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Poly::zero(&self.ctx); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut m2 = m.clone();
            m2.0[var] = 0;
            out[e].add_term(m2, c.clone());
        }
        out
    }

    /// Greatest common monomial divisor of all terms (1 for zero).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.ctx.len()),
            Some(first) => it.fold(first.clone(), |g, m| g.gcd(m)),
        }
    }

    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }

    /// Parse the canonical text form. Also accepts implicit unit
    /// coefficients, parentheses and integer powers of parenthesized groups.
    pub fn parse(ctx: &VarContext, text: &str) -> Result<Poly, PolyError> {
        let mut p = Parser {
            ctx,
            chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        };
        let out = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(PolyError::Parse(format!(
                "unexpected `{}` at offset {}",
                p.chars[p.pos], p.pos
            )));
        }
        Ok(out)
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        let a = self.terms.iter().rev();
        let b = other.terms.iter().rev();
        a.cmp(b)
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write!(f, "{}", c.abs())?;
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*{}", self.ctx.name(i))?,
                    _ => write!(f, "*{}^{}", self.ctx.name(i), e)?,
                }
            }
        }
        Ok(())
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

struct Parser<'a> {
    ctx: &'a VarContext,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn err<T>(&self, what: &str) -> Result<T, PolyError> {
        Err(PolyError::Parse(format!("{what} at offset {}", self.pos)))
    }

    fn expr(&mut self) -> Result<Poly, PolyError> {
        let mut acc = Poly::zero(self.ctx);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if sign { &acc - &t } else { &acc + &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.power()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let f = self.power()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.uint()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| PolyError::Parse("exponent too large".into()))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<Poly, PolyError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                let mut d = BigInt::one();
                if self.peek() == Some('/') {
                    self.pos += 1;
                    d = self.uint()?;
                    if d.is_zero() {
                        return self.err("zero denominator");
                    }
                }
                Ok(Poly::constant(self.ctx, Rational::new(n, d)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                self.ctx.var(&name)
            }
            _ => self.err("expected a term"),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $body:expr) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                self.check_ctx(rhs);
                $body(self, rhs)
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                self.$f(&rhs)
            }
        }
    };
}

binop!(Add, add, |a: &Poly, b: &Poly| {
    let mut out = a.clone();
    for (m, c) in &b.terms {
        out.add_term(m.clone(), c.clone());
    }
    out
});

binop!(Sub, sub, |a: &Poly, b: &Poly| {
    let mut out = a.clone();
    for (m, c) in &b.terms {
        out.add_term(m.clone(), -c);
    }
    out
});

binop!(Mul, mul, |a: &Poly, b: &Poly| {
    let mut out = Poly::zero(&a.ctx);
    for (m1, c1) in &a.terms {
        for (m2, c2) in &b.terms {
            out.add_term(m1.mul(m2), c1 * c2);
        }
    }
    out
});

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{int, rat};

    fn ctx(names: &str) -> VarContext {
        VarContext::new(names.split(',')).unwrap()
    }

    #[test]
    fn duplicate_names_rejected() {
        assert_eq!(
            VarContext::new(["x", "y", "x"]),
            Err(PolyError::DuplicateVariable("x".into()))
        );
    }

    #[test]
    fn grlex_order() {
        let x = Monomial::from_exponents(vec![1, 0]);
        let y = Monomial::from_exponents(vec![0, 1]);
        let y2 = Monomial::from_exponents(vec![0, 2]);
        assert!(x > y);
        assert!(y2 > x);
        assert!(Monomial::one(2) < y);
    }

    #[test]
    fn canonical_text_descending() {
        let c = ctx("c,d,g");
        let p = Poly::parse(&c, "d^2 + c*d*g").unwrap();
        assert_eq!(p.to_string(), "1*c*d*g + 1*d^2");
        let q = Poly::parse(&c, "-3/2*c + 2 - d").unwrap();
        assert_eq!(q.to_string(), "-3/2*c - 1*d + 2");
        assert_eq!(Poly::zero(&c).to_string(), "0");
    }

    #[test]
    fn parse_round_trip() {
        let c = ctx("a,b,c");
        let p = Poly::parse(&c, "(a+2*b)^3 - 1/3*c*a").unwrap();
        assert_eq!(Poly::parse(&c, &p.to_string()).unwrap(), p);
        assert!(Poly::parse(&c, "a + z").is_err());
        assert!(Poly::parse(&c, "a +").is_err());
        assert!(Poly::parse(&c, "1/0").is_err());
    }

    #[test]
    fn substitute_examples() {
        let c = ctx("c,d,e,g");
        let e = c.var("e").unwrap();
        let cd = Poly::parse(&c, "c*d").unwrap();
        let mut subs = BTreeMap::new();
        subs.insert("e".to_string(), cd.clone());
        assert!((&e - &cd).substitute(&subs).unwrap().is_zero());
        let p = Poly::parse(&c, "d^2 + e*g").unwrap();
        assert_eq!(
            p.substitute(&subs).unwrap(),
            Poly::parse(&c, "d^2 + c*d*g").unwrap()
        );
        let x = c.var("c").unwrap();
        assert_eq!(x.substitute(&BTreeMap::new()).unwrap(), x);
        subs.insert("q".into(), cd);
        assert_eq!(
            p.substitute(&subs),
            Err(PolyError::UnknownVariable("q".into()))
        );
    }

    #[test]
    fn exact_divide_examples() {
        let c = ctx("c,d,g");
        let p = Poly::parse(&c, "(d+c*g)*d").unwrap();
        let d = c.var("d").unwrap();
        assert_eq!(
            p.exact_divide(&d).unwrap(),
            Poly::parse(&c, "d+c*g").unwrap()
        );
        let x = c.var("c").unwrap();
        let y = c.var("g").unwrap();
        assert_eq!(x.exact_divide(&y), Err(PolyError::NotDivisible));
        assert_eq!(
            x.exact_divide(&Poly::zero(&c)),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn derivative_and_eval() {
        let c = ctx("x,y");
        let p = Poly::parse(&c, "x^3*y - 2*y^2 + 5").unwrap();
        assert_eq!(
            p.derivative(0),
            Poly::parse(&c, "3*x^2*y").unwrap()
        );
        assert_eq!(p.derivative(1), Poly::parse(&c, "x^3 - 4*y").unwrap());
        assert_eq!(p.eval(&[int(2), rat(1, 2)]).unwrap(), rat(17, 2));
        assert!(p.eval(&[int(1)]).is_err());
    }

    #[test]
    fn reduce_by_list() {
        let c = ctx("x,y");
        let f = Poly::parse(&c, "x^2*y + x*y^2 + y^2").unwrap();
        let g1 = Poly::parse(&c, "x*y - 1").unwrap();
        let g2 = Poly::parse(&c, "y^2 - 1").unwrap();
        // Classic textbook example: remainder x + y + 1 under grlex.
        assert_eq!(
            f.reduce_by(&[g1, g2]),
            Poly::parse(&c, "x + y + 1").unwrap()
        );
    }

    #[test]
    fn coefficients_and_content() {
        let c = ctx("x,y");
        let p = Poly::parse(&c, "x^2*y + 3*x*y - y").unwrap();
        let co = p.coefficients_in(0);
        assert_eq!(co.len(), 3);
        assert_eq!(co[1], Poly::parse(&c, "3*y").unwrap());
        assert_eq!(p.monomial_content(), Monomial::from_exponents(vec![0, 1]));
    }
}
