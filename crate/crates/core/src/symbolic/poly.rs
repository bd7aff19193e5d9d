use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Minimal commutative-ring interface used to evaluate polynomials in
/// other rings (rational functions, exponential sums, polynomials).
pub trait CommRing: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn is_zero_elem(&self) -> bool;

    fn neg_ref(&self) -> Self {
        self.scale(&crate::rat(-1))
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

/// Polynomial over Q in a fixed number of variables.
///
/// Terms are keyed by exponent vectors in a `BTreeMap`, so iteration and
/// text output follow lexicographic exponent order. Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Rational::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MultiPoly { nvars, terms }
    }

    /// Build from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Linear polynomial `Σ coeffs[i] x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            n,
            coeffs.iter().enumerate().map(|(i, c)| {
                let mut e = vec![0; n];
                e[i] = 1;
                (e, c.clone())
            }),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&d| d == 0))
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// Largest exponent vector in lex order with its coefficient.
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        CommRing::pow(self, e)
    }

    /// Partial derivative in variable `var`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut ne = e.clone();
                ne[var] -= 1;
                out.add_term(ne, c * Rational::from_integer(e[var].into()));
            }
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &d) in point.iter().zip(e) {
                if d > 0 {
                    t *= num_traits::pow(x.clone(), d as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Evaluate with values in an arbitrary commutative ring.
    pub fn eval_in<R: CommRing>(&self, values: &[R], one: &R) -> R {
        assert_eq!(values.len(), self.nvars);
        let mut powers: Vec<Vec<R>> = values.iter().map(|v| vec![one.clone(), v.clone()]).collect();
        let mut total = one.zero_like();
        for (e, c) in &self.terms {
            let mut t = one.scale(c);
            for (k, &d) in e.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                while powers[k].len() <= d as usize {
                    let next = powers[k].last().unwrap().mul_ref(&values[k]);
                    powers[k].push(next);
                }
                t = t.mul_ref(&powers[k][d as usize]);
            }
            total = total.add_ref(&t);
        }
        total
    }

    /// Substitute polynomials for the variables.
    pub fn compose(&self, values: &[MultiPoly]) -> MultiPoly {
        let nv = values.first().map(|v| v.nvars).unwrap_or(0);
        self.eval_in(values, &MultiPoly::one(nv))
    }

    /// Exact quotient by a polynomial of total degree one, if it divides.
    pub fn div_linear(&self, linear: &MultiPoly) -> Option<MultiPoly> {
        let lead = (0..self.nvars).find(|&v| linear.degree_in(v) == 1)?;
        let mut unit = vec![0; self.nvars];
        unit[lead] = 1;
        let a = linear.coefficient(&unit);
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        loop {
            let d = rem.degree_in(lead);
            if d == 0 {
                break;
            }
            let top: Vec<(Vec<u32>, Rational)> = rem
                .terms
                .iter()
                .filter(|(e, _)| e[lead] == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect();
            for (e, c) in top {
                let mut qe = e;
                qe[lead] -= 1;
                let q = MultiPoly::monomial(self.nvars, qe, &c / &a);
                rem = &rem - &(&q * linear);
                quot = &quot + &q;
            }
        }
        rem.is_zero().then_some(quot)
    }

    /// Text with the given variable names, highest monomials first.
    pub fn to_text(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let is_const = e.iter().all(|&d| d == 0);
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &d)| d > 0)
                .map(|(k, &d)| if d == 1 { names[k].to_string() } else { format!("{}^{}", names[k], d) })
                .collect();
            if is_const {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }

    pub fn default_names(nvars: usize) -> Vec<String> {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = Self::default_names(self.nvars);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.to_text(&refs))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl CommRing for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.nvars)
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(self.nvars)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        MultiPoly::scale(self, c)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(3, i)
    }

    #[test]
    fn arithmetic_and_display() {
        let p = &(&x(0) * &x(1)) - &x(2);
        assert_eq!(p.to_text(&["x", "y", "z"]), "x*y - z");
        assert_eq!((&p - &p), MultiPoly::zero(3));
        let sq = p.pow(2);
        assert_eq!(sq.num_terms(), 3);
        assert_eq!(MultiPoly::constant(3, ratio(-1, 2)).to_string(), "-1/2");
    }

    #[test]
    fn derivative_and_eval() {
        let p = &x(0).pow(3) + &x(1).scale(&rat(2));
        assert_eq!(p.derivative(0), x(0).pow(2).scale(&rat(3)));
        assert_eq!(p.eval(&[rat(2), rat(1), rat(0)]), rat(10));
    }

    #[test]
    fn exact_linear_division() {
        let l = &x(0) - &x(1);
        let p = &(&l * &l) * &x(2);
        assert_eq!(p.div_linear(&l).unwrap(), &l * &x(2));
        assert!(x(2).div_linear(&l).is_none());
        let affine = &x(0) + &MultiPoly::one(3);
        assert_eq!((&affine * &x(1)).div_linear(&affine).unwrap(), x(1));
    }

    #[test]
    fn compose_is_substitution() {
        let p = &x(0) * &x(1);
        let sub = p.compose(&[&x(1) + &x(2), x(2), x(0)]);
        assert_eq!(sub, &(&x(1) * &x(2)) + &(&x(2) * &x(2)));
    }
}
