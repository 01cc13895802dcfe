use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::polynomial::{default_names, Polynomial};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Quotient of polynomials. The denominator is kept as a product of powers of
/// primitive factors with positive leading coefficient, so the expanded
/// denominator always has a positive leading coefficient. Factors that divide
/// the numerator exactly are cancelled after every operation; no gcd is ever
/// computed, and zero-testing only looks at the numerator.
#[derive(Clone, Debug)]
pub struct RatExpr {
    num: Polynomial,
    den: BTreeMap<Polynomial, u32>,
}

type Factors = BTreeMap<Polynomial, u32>;

fn reduce(mut num: Polynomial, mut den: Factors) -> RatExpr {
    if num.is_zero() {
        return RatExpr { num, den: Factors::new() };
    }
    for (f, e) in den.iter_mut() {
        while *e > 0 {
            match num.div_exact(f) {
                Some(q) => {
                    num = q;
                    *e -= 1;
                }
                None => break,
            }
        }
    }
    den.retain(|_, e| *e > 0);
    RatExpr { num, den }
}

fn expand(nvars: usize, den: &Factors) -> Polynomial {
    let mut acc = Polynomial::one(nvars);
    for (f, &e) in den {
        acc = &acc * &f.pow(e);
    }
    acc
}

/// Factors `p` as `c * prod f^e` using monomial extraction, trial division by
/// `hints`, and a single leftover factor.
fn factor_with_hints(p: &Polynomial, hints: &[Polynomial]) -> (Rational, Factors) {
    let nvars = p.nvars();
    let (c, mut f) = p.primitive();
    let mut out = Factors::new();
    let mc = f.monomial_content();
    if !mc.is_one() {
        f = f.div_monomial(&mc);
        for (k, &e) in mc.0.iter().enumerate() {
            if e > 0 {
                *out.entry(Polynomial::var(nvars, k)).or_insert(0) += e;
            }
        }
    }
    for h in hints {
        if h.total_degree() == 0 || (h.len() == 1) {
            continue;
        }
        while f.total_degree() > 0 {
            match f.div_exact(h) {
                Some(q) => {
                    f = q;
                    *out.entry(h.clone()).or_insert(0) += 1;
                }
                None => break,
            }
        }
    }
    let (c2, f) = f.primitive();
    if f.total_degree() > 0 {
        *out.entry(f).or_insert(0) += 1;
    }
    (c * c2, out)
}

impl RatExpr {
    pub fn zero(nvars: usize) -> Self {
        RatExpr { num: Polynomial::zero(nvars), den: Factors::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        RatExpr { num: Polynomial::constant(nvars, c), den: Factors::new() }
    }

    pub fn var(nvars: usize, k: usize) -> Self {
        Polynomial::var(nvars, k).into()
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> Polynomial {
        expand(self.nvars(), &self.den)
    }

    pub fn den_factors(&self) -> impl Iterator<Item = (&Polynomial, u32)> {
        self.den.iter().map(|(f, &e)| (f, e))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Builds `num / den` for arbitrary polynomials.
    pub fn from_parts(num: Polynomial, den: &Polynomial) -> Result<RatExpr> {
        RatExpr::from(num).try_div(&RatExpr::from(den.clone()))
    }

    fn hints(&self, other: &RatExpr) -> Vec<Polynomial> {
        self.den.keys().chain(other.den.keys()).cloned().collect()
    }

    pub fn inv_with_hints(&self, hints: &[Polynomial]) -> Result<RatExpr> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (c, factors) = factor_with_hints(&self.num, hints);
        let num = expand(self.nvars(), &self.den).scale(&c.recip());
        Ok(reduce(num, factors))
    }

    pub fn inv(&self) -> Result<RatExpr> {
        let hints: Vec<Polynomial> = self.den.keys().cloned().collect();
        self.inv_with_hints(&hints)
    }

    pub fn try_add(&self, other: &RatExpr) -> Result<RatExpr> {
        if self.nvars() != other.nvars() {
            return Err(Error::Dimension(self.nvars(), other.nvars()));
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.den == other.den {
            return Ok(reduce(&self.num + &other.num, self.den.clone()));
        }
        let mut common = self.den.clone();
        for (f, &e) in &other.den {
            let slot = common.entry(f.clone()).or_insert(0);
            *slot = (*slot).max(e);
        }
        let lift = |r: &RatExpr| {
            let mut m = r.num.clone();
            for (f, &e) in &common {
                let have = r.den.get(f).copied().unwrap_or(0);
                if e > have {
                    m = &m * &f.pow(e - have);
                }
            }
            m
        };
        let num = &lift(self) + &lift(other);
        Ok(reduce(num, common))
    }

    pub fn try_sub(&self, other: &RatExpr) -> Result<RatExpr> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &RatExpr) -> Result<RatExpr> {
        if self.nvars() != other.nvars() {
            return Err(Error::Dimension(self.nvars(), other.nvars()));
        }
        if self.is_zero() || other.is_zero() {
            return Ok(RatExpr::zero(self.nvars()));
        }
        let a = reduce(self.num.clone(), other.den.clone());
        let b = reduce(other.num.clone(), self.den.clone());
        let mut den = a.den;
        for (f, e) in b.den {
            *den.entry(f).or_insert(0) += e;
        }
        Ok(RatExpr { num: &a.num * &b.num, den })
    }

    pub fn try_div(&self, other: &RatExpr) -> Result<RatExpr> {
        if self.nvars() != other.nvars() {
            return Err(Error::Dimension(self.nvars(), other.nvars()));
        }
        let inv = other.inv_with_hints(&self.hints(other))?;
        self.try_mul(&inv)
    }

    pub fn scale(&self, c: &Rational) -> RatExpr {
        if c.is_zero() {
            return RatExpr::zero(self.nvars());
        }
        RatExpr { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: i32) -> Result<RatExpr> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        if base.is_zero() {
            return Ok(if k == 0 { RatExpr::one(self.nvars()) } else { base });
        }
        let den = base.den.iter().map(|(f, &x)| (f.clone(), x * k)).collect();
        Ok(RatExpr { num: base.num.pow(k), den })
    }

    /// Applies a derivation given on polynomials, via the quotient rule.
    pub fn derive(&self, dp: impl Fn(&Polynomial) -> Polynomial) -> RatExpr {
        let nvars = self.nvars();
        if self.den.is_empty() {
            return dp(&self.num).into();
        }
        // d(N / prod f^e) = (dN * P - N * sum e_j df_j P/f_j) / (D * P), P = prod f_j
        let p: Polynomial = self.den.keys().fold(Polynomial::one(nvars), |acc, f| &acc * f);
        let mut s = Polynomial::zero(nvars);
        for (f, &e) in &self.den {
            let df = dp(f);
            if df.is_zero() {
                continue;
            }
            let rest = self.den.keys().filter(|g| *g != f).fold(Polynomial::one(nvars), |acc, g| &acc * g);
            s = &s + &(&df * &rest).scale(&Rational::from_integer(e.into()));
        }
        let num = &(&dp(&self.num) * &p) - &(&self.num * &s);
        let den = self.den.iter().map(|(f, &e)| (f.clone(), e + 1)).collect();
        reduce(num, den)
    }

    /// Plain partial derivative in the 0-based variable `k`.
    pub fn partial(&self, k: usize) -> RatExpr {
        self.derive(|p| p.partial(k))
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let mut d = Rational::one();
        for (f, &e) in &self.den {
            let v = f.eval(point);
            if v.is_zero() {
                return Err(Error::Pole);
            }
            for _ in 0..e {
                d *= &v;
            }
        }
        Ok(self.num.eval(point) / d)
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.den.is_empty() {
            return self.num.to_string_with(names);
        }
        let den = self.den();
        let mut num = self.num.to_string_with(names);
        if self.num.len() > 1 {
            num = format!("({num})");
        }
        // a bare u^k needs no parentheses after the slash
        let bare = den.len() == 1 && den.terms().all(|(m, c)| c.is_one() && m.0.iter().filter(|&&e| e > 0).count() == 1);
        let den = den.to_string_with(names);
        if bare {
            format!("{num}/{den}")
        } else {
            format!("{num}/({den})")
        }
    }
}

impl From<Polynomial> for RatExpr {
    fn from(num: Polynomial) -> Self {
        RatExpr { num, den: Factors::new() }
    }
}

impl PartialEq for RatExpr {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        (self - other).is_zero()
    }
}

impl fmt::Display for RatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_names(self.nvars())))
    }
}

impl Add for &RatExpr {
    type Output = RatExpr;
    fn add(self, rhs: &RatExpr) -> RatExpr {
        self.try_add(rhs).expect("expression add")
    }
}

impl Sub for &RatExpr {
    type Output = RatExpr;
    fn sub(self, rhs: &RatExpr) -> RatExpr {
        self.try_sub(rhs).expect("expression sub")
    }
}

impl Mul for &RatExpr {
    type Output = RatExpr;
    fn mul(self, rhs: &RatExpr) -> RatExpr {
        self.try_mul(rhs).expect("expression mul")
    }
}

impl Neg for &RatExpr {
    type Output = RatExpr;
    fn neg(self) -> RatExpr {
        RatExpr { num: -&self.num, den: self.den.clone() }
    }
}

impl Add for RatExpr {
    type Output = RatExpr;
    fn add(self, rhs: RatExpr) -> RatExpr {
        &self + &rhs
    }
}

impl Sub for RatExpr {
    type Output = RatExpr;
    fn sub(self, rhs: RatExpr) -> RatExpr {
        &self - &rhs
    }
}

impl Mul for RatExpr {
    type Output = RatExpr;
    fn mul(self, rhs: RatExpr) -> RatExpr {
        &self * &rhs
    }
}

impl Neg for RatExpr {
    type Output = RatExpr;
    fn neg(self) -> RatExpr {
        -&self
    }
}
