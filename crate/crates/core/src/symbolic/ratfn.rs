use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{CommRing, MultiPoly};
use crate::{Error, Rational, Result};

/// Homogeneous linear form with coprime integer coefficients whose first
/// nonzero coefficient is positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LinearForm(Vec<BigInt>);

impl LinearForm {
    /// Normalize rational coefficients; returns the form and the scalar `c`
    /// with `coeffs = c * form`. `None` for the zero vector.
    pub fn normalize(coeffs: &[Rational]) -> Option<(LinearForm, Rational)> {
        let first = coeffs.iter().position(|c| !c.is_zero())?;
        let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if ints[first].is_negative() {
            g = -g;
        }
        let form: Vec<BigInt> = ints.iter().map(|v| v / &g).collect();
        Some((LinearForm(form), Rational::new(g, lcm)))
    }

    pub fn from_ints(coeffs: &[i64]) -> Option<(LinearForm, Rational)> {
        let r: Vec<Rational> = coeffs.iter().map(|&c| crate::rat(c)).collect();
        Self::normalize(&r)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn to_poly(&self) -> MultiPoly {
        let c: Vec<Rational> = self.0.iter().map(|v| Rational::from_integer(v.clone())).collect();
        MultiPoly::linear(&c)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.0.iter().zip(point).map(|(a, x)| Rational::from_integer(a.clone()) * x).sum()
    }

    fn to_text(&self, names: &[&str]) -> String {
        self.to_poly().to_text(names)
    }
}

/// Rational function `numerator / Π form^mult` over Q.
///
/// Canonical form: every denominator factor that divides the numerator is
/// cancelled, and the linear forms are normalized, so structural equality
/// coincides with equality of functions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RationalFn {
    numerator: MultiPoly,
    denominator: BTreeMap<LinearForm, u32>,
}

impl RationalFn {
    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(MultiPoly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(MultiPoly::one(nvars))
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(nvars, c))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RationalFn { numerator: p, denominator: BTreeMap::new() }
    }

    /// `1 / ⟨coeffs, ·⟩`. Errors on the zero form.
    pub fn inverse_linear(coeffs: &[Rational]) -> Result<Self> {
        let (form, c) = LinearForm::normalize(coeffs).ok_or_else(|| Error::DivisionByZero("zero linear form".into()))?;
        let n = coeffs.len();
        let mut denominator = BTreeMap::new();
        denominator.insert(form, 1);
        Ok(RationalFn { numerator: MultiPoly::constant(n, c.recip()), denominator })
    }

    /// Build and canonicalize `numerator / Π form^mult`.
    pub fn from_parts(numerator: MultiPoly, denominator: BTreeMap<LinearForm, u32>) -> Self {
        let mut r = RationalFn { numerator, denominator };
        r.reduce();
        r
    }

    pub fn nvars(&self) -> usize {
        self.numerator.nvars()
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.numerator
    }

    pub fn denominator_factors(&self) -> &BTreeMap<LinearForm, u32> {
        &self.denominator
    }

    pub fn denominator(&self) -> MultiPoly {
        let n = self.nvars();
        self.denominator
            .iter()
            .fold(MultiPoly::one(n), |acc, (f, &m)| &acc * &f.to_poly().pow(m))
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.is_empty()
    }

    /// Degree of homogeneity if numerator is homogeneous.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degs = self.numerator.terms().keys().map(|e| e.iter().sum::<u32>());
        let d = degs.next()?;
        if degs.any(|e| e != d) {
            return None;
        }
        let den: u32 = self.denominator.values().sum();
        Some(d as i64 - den as i64)
    }

    fn reduce(&mut self) {
        if self.numerator.is_zero() {
            self.denominator.clear();
            return;
        }
        let forms: Vec<LinearForm> = self.denominator.keys().cloned().collect();
        for f in forms {
            let lp = f.to_poly();
            while let Some(m) = self.denominator.get(&f).copied() {
                match self.numerator.div_linear(&lp) {
                    Some(q) => {
                        self.numerator = q;
                        if m == 1 {
                            self.denominator.remove(&f);
                        } else {
                            self.denominator.insert(f.clone(), m - 1);
                        }
                    }
                    None => break,
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RationalFn { numerator: self.numerator.scale(c), denominator: self.denominator.clone() }
    }

    /// Multiplicative inverse; the numerator must be a constant times a
    /// product of homogeneous linear forms of total degree at most one.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("zero rational function".into()));
        }
        let n = self.nvars();
        let num_poly = self.denominator();
        let inv_num = if self.numerator.is_constant() {
            RationalFn::constant(n, self.numerator.constant_term().recip())
        } else if self.numerator.total_degree() == Some(1) && self.numerator.constant_term().is_zero() {
            let coeffs: Vec<Rational> = (0..n)
                .map(|i| {
                    let mut e = vec![0; n];
                    e[i] = 1;
                    self.numerator.coefficient(&e)
                })
                .collect();
            Self::inverse_linear(&coeffs)?
        } else {
            return Err(Error::UnsupportedDenominator(self.numerator.to_string()));
        };
        Ok(&inv_num * &RationalFn::from_poly(num_poly))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Exact value at a rational point; reports the vanishing factor.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let mut den = Rational::one();
        for (f, &m) in &self.denominator {
            let v = f.eval(point);
            if v.is_zero() {
                let names = MultiPoly::default_names(self.nvars());
                let refs: Vec<&str> = names.iter().map(String::as_str).collect();
                return Err(Error::DivisionByZero(f.to_text(&refs)));
            }
            den *= num_traits::pow(v, m as usize);
        }
        Ok(self.numerator.eval(point) / den)
    }

    /// Restrict to the line `x = s * dir`, returning `(N(s), C, K)` with
    /// the function equal to `N(s) / (C * s^K)`. Errors if `dir` lies on a
    /// denominator hyperplane.
    pub fn restrict_to_line(&self, dir: &[Rational]) -> Result<(Vec<Rational>, Rational, u32)> {
        let mut c = Rational::one();
        let mut k = 0u32;
        for (f, &m) in &self.denominator {
            let v = f.eval(dir);
            if v.is_zero() {
                return Err(Error::DivisionByZero(format!("direction lies on {:?}", f.coeffs())));
            }
            c *= num_traits::pow(v, m as usize);
            k += m;
        }
        let mut coeffs: Vec<Rational> = Vec::new();
        for (e, a) in self.numerator.terms() {
            let d: u32 = e.iter().sum();
            let mut t = a.clone();
            for (x, &p) in dir.iter().zip(e) {
                t *= num_traits::pow(x.clone(), p as usize);
            }
            if coeffs.len() <= d as usize {
                coeffs.resize(d as usize + 1, Rational::zero());
            }
            coeffs[d as usize] += t;
        }
        Ok((coeffs, c, k))
    }

    pub fn to_text(&self, names: &[&str]) -> String {
        let num = self.numerator.to_text(names);
        if self.denominator.is_empty() {
            return num;
        }
        let dens: Vec<String> = self
            .denominator
            .iter()
            .map(|(f, &m)| {
                let t = format!("({})", f.to_text(names));
                if m == 1 { t } else { format!("{t}^{m}") }
            })
            .collect();
        let num = if self.numerator.num_terms() > 1 { format!("({num})") } else { num };
        if dens.len() == 1 {
            format!("{num}/{}", dens[0])
        } else {
            format!("{num}/({})", dens.join("*"))
        }
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = MultiPoly::default_names(self.nvars());
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.to_text(&refs))
    }
}

fn lift(num: &MultiPoly, den: &BTreeMap<LinearForm, u32>, target: &BTreeMap<LinearForm, u32>) -> MultiPoly {
    let mut out = num.clone();
    for (f, &m) in target {
        let have = den.get(f).copied().unwrap_or(0);
        if m > have {
            out = &out * &f.to_poly().pow(m - have);
        }
    }
    out
}

fn combine(a: &RationalFn, b: &RationalFn, negate: bool) -> RationalFn {
    let mut den = a.denominator.clone();
    for (f, &m) in &b.denominator {
        let e = den.entry(f.clone()).or_insert(0);
        *e = (*e).max(m);
    }
    let na = lift(&a.numerator, &a.denominator, &den);
    let nb = lift(&b.numerator, &b.denominator, &den);
    let num = if negate { &na - &nb } else { &na + &nb };
    RationalFn::from_parts(num, den)
}

impl Add for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        combine(self, rhs, false)
    }
}

impl Sub for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        combine(self, rhs, true)
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        self.scale(&-Rational::one())
    }
}

impl Mul for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        if self.is_zero() || rhs.is_zero() {
            return RationalFn::zero(self.nvars());
        }
        let mut den = self.denominator.clone();
        for (f, &m) in &rhs.denominator {
            *den.entry(f.clone()).or_insert(0) += m;
        }
        RationalFn::from_parts(&self.numerator * &rhs.numerator, den)
    }
}

impl CommRing for RationalFn {
    fn zero_like(&self) -> Self {
        RationalFn::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        RationalFn::one(self.nvars())
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        RationalFn::scale(self, c)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    fn inv_form(c: &[i64]) -> RationalFn {
        let r: Vec<Rational> = c.iter().map(|&v| rat(v)).collect();
        RationalFn::inverse_linear(&r).unwrap()
    }

    #[test]
    fn normalization_of_forms() {
        let (f, c) = LinearForm::from_ints(&[-2, 4]).unwrap();
        assert_eq!(f.coeffs(), &[BigInt::from(1), BigInt::from(-2)]);
        assert_eq!(c, rat(-2));
        assert_eq!(inv_form(&[-2, 4]), inv_form(&[1, -2]).scale(&ratio(-1, 2)));
    }

    #[test]
    fn partial_fraction_identity() {
        // 1/(a(a+b)) + 1/(b(a+b)) = 1/(ab)
        let a = inv_form(&[1, 0]);
        let b = inv_form(&[0, 1]);
        let ab = inv_form(&[1, 1]);
        let lhs = &(&a * &ab) + &(&b * &ab);
        assert_eq!(lhs, &a * &b);
        assert!(lhs.is_polynomial() == false);
        assert_eq!(lhs.homogeneous_degree(), Some(-2));
    }

    #[test]
    fn cancellation_gives_polynomial() {
        let a = RationalFn::from_poly(MultiPoly::var(2, 0));
        let r = &a * &inv_form(&[2, 0]);
        assert_eq!(r, RationalFn::constant(2, ratio(1, 2)));
        assert_eq!((&r - &r), RationalFn::zero(2));
    }

    #[test]
    fn evaluation_and_poles() {
        let f = inv_form(&[1, 0]);
        assert_eq!(f.eval(&[rat(3), rat(5)]).unwrap(), ratio(1, 3));
        let err = f.eval(&[rat(0), rat(5)]).unwrap_err();
        assert!(matches!(err, Error::DivisionByZero(ref s) if s == "x1"));
        assert_eq!(RationalFn::constant(2, rat(7)).eval(&[rat(0), rat(0)]).unwrap(), rat(7));
    }

    #[test]
    fn inverse_of_linear_numerator() {
        let f = &inv_form(&[1, 0]) * &inv_form(&[0, 1]);
        let g = f.inv().unwrap();
        assert_eq!(g.numerator(), &(&MultiPoly::var(2, 0) * &MultiPoly::var(2, 1)));
        let sum = RationalFn::from_poly(&MultiPoly::var(2, 0) + &MultiPoly::var(2, 1));
        assert_eq!(&sum.inv().unwrap() * &sum, RationalFn::one(2));
        let sq = RationalFn::from_poly(MultiPoly::var(2, 0).pow(2));
        assert!(matches!(sq.inv(), Err(Error::UnsupportedDenominator(_))));
    }

    #[test]
    fn text_form() {
        assert_eq!(inv_form(&[1, -1]).to_string(), "1/(x1 - x2)");
    }
}
