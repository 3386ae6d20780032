use std::collections::BTreeMap;
use std::fmt;

use super::{Monomial, Poly, PolyError, Rational, VarContext};

/// Quotient of two polynomials. Not reduced beyond monomial content and
/// leading-coefficient normalization; equality is by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if num.context() != den.context() {
            return Err(PolyError::ContextMismatch);
        }
        Ok(Self { num, den }.normalized())
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.context());
        Self { num: p, den }
    }

    pub fn context(&self) -> &VarContext {
        self.num.context()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalized(self) -> Self {
        if self.num.is_zero() {
            return Self::from_poly(self.num);
        }
        let g = self.num.monomial_content().gcd(&self.den.monomial_content());
        let (mut num, mut den) = (self.num, self.den);
        if !g.is_one() {
            let ctx = num.context().clone();
            let divisor = Poly::from_term(&ctx, g, Rational::from_integer(1.into()));
            num = num.exact_divide(&divisor).expect("content divides");
            den = den.exact_divide(&divisor).expect("content divides");
        }
        let lc = den.leading_term().expect("nonzero").1.clone();
        let inv = lc.recip();
        Self {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return Self {
                num: &self.num + &o.num,
                den: self.den.clone(),
            }
            .normalized();
        }
        Self {
            num: &(&self.num * &o.den) + &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
        .normalized()
    }

    pub fn neg(&self) -> RatFunc {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        Self {
            num: &self.num * &o.num,
            den: &self.den * &o.den,
        }
        .normalized()
    }

    pub fn inv(&self) -> Result<RatFunc, PolyError> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc, PolyError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        let d = self.den.eval(point)?;
        if num_traits::Zero::is_zero(&d) {
            return Err(PolyError::DivisionByZero);
        }
        Ok(self.num.eval(point)? / d)
    }

    /// Substitute rational functions for variables (by index).
    pub fn substitute(&self, subs: &BTreeMap<usize, RatFunc>) -> Result<RatFunc, PolyError> {
        let n = subst_poly(&self.num, subs);
        let d = subst_poly(&self.den, subs);
        n.div(&d)
    }
}

fn subst_poly(p: &Poly, subs: &BTreeMap<usize, RatFunc>) -> RatFunc {
    let ctx = p.context();
    let mut acc = RatFunc::from_poly(Poly::zero(ctx));
    for (m, c) in p.terms() {
        let mut kept = m.exponents().to_vec();
        let mut term = RatFunc::from_poly(Poly::one(ctx));
        for (&v, f) in subs {
            let e = kept[v];
            if e == 0 {
                continue;
            }
            kept[v] = 0;
            for _ in 0..e {
                term = term.mul(f);
            }
        }
        let mono = Poly::from_term(ctx, Monomial::from_exponents(kept), c.clone());
        acc = acc.add(&term.mul(&RatFunc::from_poly(mono)));
    }
    acc
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl Eq for RatFunc {}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.constant_value() == Some(Rational::from_integer(1.into())) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
