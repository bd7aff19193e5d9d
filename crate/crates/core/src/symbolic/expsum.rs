use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{ToPrimitive, Zero};

use super::poly::{CommRing, MultiPoly};
use super::ratfn::RationalFn;
use crate::rootdata::{CartanData, RootVector, Weight};
use crate::{Rational, Result};

/// Coordinates on the Cartan subalgebra t.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum ChartKind {
    /// Variables `a_i = ⟨α_i, x⟩`.
    SimpleRoot,
    /// `x = Σ u_i α_i^∨`, so variables are dual to the fundamental weights.
    Coroot,
}

/// A coordinate system on t together with the linear form of each simple
/// root in those coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TorusChart {
    kind: ChartKind,
    /// `root_forms[j][i]`: coefficient of variable `i` in `⟨α_j, x⟩`.
    root_forms: Vec<Vec<i64>>,
    /// `weight_forms[j]`: form of `ω_j` (rational in the simple-root chart).
    weight_forms: Vec<Vec<Rational>>,
}

impl TorusChart {
    pub fn simple_root(cartan: &CartanData) -> Self {
        let r = cartan.rank();
        let root_forms = (0..r).map(|j| (0..r).map(|i| i64::from(i == j)).collect()).collect();
        let weight_forms = (0..r)
            .map(|j| cartan.weight_to_root_rational(&Weight::fundamental(r, j)))
            .collect();
        TorusChart { kind: ChartKind::SimpleRoot, root_forms, weight_forms }
    }

    pub fn coroot(cartan: &CartanData) -> Self {
        let r = cartan.rank();
        let root_forms = (0..r).map(|j| (0..r).map(|i| cartan.entry(i, j)).collect()).collect();
        let weight_forms = (0..r)
            .map(|j| (0..r).map(|i| crate::rat(i64::from(i == j))).collect())
            .collect();
        TorusChart { kind: ChartKind::Coroot, root_forms, weight_forms }
    }

    pub fn kind(&self) -> ChartKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.root_forms.len()
    }

    pub fn variable_names(&self) -> Vec<String> {
        let prefix = match self.kind {
            ChartKind::SimpleRoot => "a",
            ChartKind::Coroot => "u",
        };
        (1..=self.rank()).map(|i| format!("{prefix}{i}")).collect()
    }

    /// Coefficients of `⟨β, ·⟩` for β in simple-root coordinates.
    pub fn root_form(&self, beta: &RootVector) -> Vec<Rational> {
        let r = self.rank();
        let mut out = vec![Rational::zero(); r];
        for (j, &c) in beta.0.iter().enumerate() {
            for i in 0..r {
                out[i] += Rational::from_integer((c * self.root_forms[j][i]).into());
            }
        }
        out
    }

    /// Coefficients of `⟨λ, ·⟩` for λ in fundamental-weight coordinates.
    pub fn weight_form(&self, lambda: &Weight) -> Vec<Rational> {
        let r = self.rank();
        let mut out = vec![Rational::zero(); r];
        for (j, &c) in lambda.0.iter().enumerate() {
            for i in 0..r {
                out[i] += &self.weight_forms[j][i] * Rational::from_integer(c.into());
            }
        }
        out
    }

    pub fn root_value(&self, beta: &RootVector, point: &[Rational]) -> Rational {
        self.root_form(beta).iter().zip(point).map(|(a, b)| a * b).sum()
    }

    fn names(&self) -> Vec<String> {
        self.variable_names()
    }
}

/// Finite sum `Σ_β c_β(x) e^{⟨β,x⟩}` with β in the root lattice and
/// rational-function coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExpSum {
    chart: TorusChart,
    terms: BTreeMap<RootVector, RationalFn>,
}

impl ExpSum {
    pub fn zero(chart: &TorusChart) -> Self {
        ExpSum { chart: chart.clone(), terms: BTreeMap::new() }
    }

    pub fn one(chart: &TorusChart) -> Self {
        Self::exponential(chart, &RootVector::zero(chart.rank()), RationalFn::one(chart.rank()))
    }

    /// `coeff · e^{β}`.
    pub fn exponential(chart: &TorusChart, beta: &RootVector, coeff: RationalFn) -> Self {
        let mut s = Self::zero(chart);
        s.add_term(beta.clone(), coeff);
        s
    }

    pub fn from_fn(chart: &TorusChart, f: RationalFn) -> Self {
        Self::exponential(chart, &RootVector::zero(chart.rank()), f)
    }

    pub fn chart(&self) -> &TorusChart {
        &self.chart
    }

    pub fn terms(&self) -> &BTreeMap<RootVector, RationalFn> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, beta: RootVector, coeff: RationalFn) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(beta) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let s = &*o.get() + &coeff;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Coefficient of `e^β`.
    pub fn coefficient(&self, beta: &RootVector) -> RationalFn {
        self.terms.get(beta).cloned().unwrap_or_else(|| RationalFn::zero(self.chart.rank()))
    }

    /// Coefficient of `e^0`.
    pub fn zero_coefficient(&self) -> RationalFn {
        self.coefficient(&RootVector::zero(self.chart.rank()))
    }

    /// Exponents with nonzero coefficient.
    pub fn support(&self) -> Vec<RootVector> {
        self.terms.keys().cloned().collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(&self.chart);
        for (b, f) in &self.terms {
            out.add_term(b.clone(), f.scale(c));
        }
        out
    }

    pub fn mul_fn(&self, g: &RationalFn) -> Self {
        let mut out = Self::zero(&self.chart);
        for (b, f) in &self.terms {
            out.add_term(b.clone(), f * g);
        }
        out
    }

    /// Exact value at a rational point of t.
    pub fn evaluate(&self, point: &[Rational]) -> Result<ExpValue> {
        let mut v = ExpValue::default();
        for (b, f) in &self.terms {
            let c = f.eval(point)?;
            v.add(self.chart.root_value(b, point), c);
        }
        Ok(v)
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let names = self.chart.names();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        self.terms
            .iter()
            .map(|(b, f)| format!("e^({b})*[{}]", f.to_text(&refs)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for ExpSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for &ExpSum {
    type Output = ExpSum;
    fn add(self, rhs: &ExpSum) -> ExpSum {
        assert_eq!(self.chart, rhs.chart, "exponential sums in different charts");
        let mut out = self.clone();
        for (b, f) in &rhs.terms {
            out.add_term(b.clone(), f.clone());
        }
        out
    }
}

impl Sub for &ExpSum {
    type Output = ExpSum;
    fn sub(self, rhs: &ExpSum) -> ExpSum {
        self + &-rhs
    }
}

impl Neg for &ExpSum {
    type Output = ExpSum;
    fn neg(self) -> ExpSum {
        self.scale(&crate::rat(-1))
    }
}

impl Mul for &ExpSum {
    type Output = ExpSum;
    fn mul(self, rhs: &ExpSum) -> ExpSum {
        assert_eq!(self.chart, rhs.chart, "exponential sums in different charts");
        let mut out = ExpSum::zero(&self.chart);
        for (b1, f1) in &self.terms {
            for (b2, f2) in &rhs.terms {
                out.add_term(b1.add(b2), f1 * f2);
            }
        }
        out
    }
}

impl CommRing for ExpSum {
    fn zero_like(&self) -> Self {
        ExpSum::zero(&self.chart)
    }
    fn one_like(&self) -> Self {
        ExpSum::one(&self.chart)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        ExpSum::scale(self, c)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

/// Value of an exponential sum at a rational point: `Σ c_q e^q` with
/// rational exponents `q` and rational coefficients `c_q`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ExpValue {
    terms: BTreeMap<Rational, Rational>,
}

impl ExpValue {
    pub fn add(&mut self, exponent: Rational, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let e = self.terms.entry(exponent.clone()).or_insert_with(Rational::zero);
        *e += coeff;
        if e.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Rational, Rational> {
        &self.terms
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(q, c)| c.to_f64().unwrap_or(f64::NAN) * q.to_f64().unwrap_or(f64::NAN).exp())
            .sum()
    }
}

impl fmt::Display for ExpValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(q, c)| format!("{c}*e^({q})")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Polynomial `⟨β, ·⟩` in the chart variables.
pub(crate) fn form_poly(chart: &TorusChart, beta: &RootVector) -> MultiPoly {
    MultiPoly::linear(&chart.root_form(beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn a2() -> CartanData {
        CartanData::type_a(2)
    }

    #[test]
    fn charts_agree_on_pairings() {
        let c = a2();
        let sr = TorusChart::simple_root(&c);
        let co = TorusChart::coroot(&c);
        assert_eq!(co.root_form(&RootVector(vec![1, 0])), vec![rat(2), rat(-1)]);
        assert_eq!(sr.weight_form(&Weight(vec![1, 0])), vec![crate::ratio(2, 3), crate::ratio(1, 3)]);
        // ω_i(α_j^∨) = δ_ij in the coroot chart
        let u = [rat(1), rat(0)];
        assert_eq!(co.root_value(&RootVector(vec![1, 1]), &u), rat(1));
    }

    #[test]
    fn exponentials_multiply() {
        let ch = TorusChart::simple_root(&a2());
        let a = ExpSum::exponential(&ch, &RootVector(vec![1, 0]), RationalFn::one(2));
        let b = ExpSum::exponential(&ch, &RootVector(vec![0, 1]), RationalFn::constant(2, rat(3)));
        let p = &a * &b;
        assert_eq!(p.support(), vec![RootVector(vec![1, 1])]);
        assert_eq!(p.to_text(), "e^(a1+a2)*[3]");
        assert!((&p - &p).is_zero());
        let v = p.evaluate(&[rat(1), rat(0)]).unwrap();
        assert!((v.to_f64() - 3.0 * 1f64.exp()).abs() < 1e-12);
    }
}
