//! Shuffle measures on t: the rational functions D̄_i, the Fourier
//! transforms of the simplex push-forwards D_i, their extension to C[N]
//! through the pairing, the element n_x, and the morphism checks tying
//! them together.
//!
//! Conventions: t carries the simple-root chart `a_i = α_i(x)` with
//! `α_i(x) = x_i − x_{i+1}`, characters are `e^{α_i}(t) = t_i / t_{i+1}`,
//! and FT(μ)(x) = ∫ e^{⟨y, x⟩} dμ(y).

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::coordring::CoordRing;
use crate::polytope::{hull, LatticePolytope};
use crate::rootdata::RootVector;
use crate::symbolic::{ft_simplex, CommRing, ExpSum, MultiPoly, RationalFn, TorusChart};
use crate::{rat, Error, Rational, Result};

/// Upper unitriangular matrix with rational-function entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipotentSymbolic {
    pub entries: Vec<Vec<RationalFn>>,
}

impl UnipotentSymbolic {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn inverse(&self) -> UnipotentSymbolic {
        let n = self.size();
        let nv = self.entries[0][0].nvars();
        // (1 + M)^{-1} = Σ_k (−M)^k with M strictly upper triangular
        let neg: Vec<Vec<RationalFn>> = (0..n)
            .map(|i| (0..n).map(|j| if j > i { -&self.entries[i][j] } else { RationalFn::zero(nv) }).collect())
            .collect();
        let mut out = identity_fn(n, nv);
        let mut power = neg.clone();
        for _ in 1..n {
            for i in 0..n {
                for j in 0..n {
                    out[i][j] = &out[i][j] + &power[i][j];
                }
            }
            power = matmul(&power, &neg);
        }
        UnipotentSymbolic { entries: out }
    }
}

fn identity_fn(n: usize, nv: usize) -> Vec<Vec<RationalFn>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { RationalFn::one(nv) } else { RationalFn::zero(nv) }).collect()).collect()
}

fn matmul<R: CommRing>(a: &[Vec<R>], b: &[Vec<R>]) -> Vec<Vec<R>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(a[i][0].zero_like(), |acc, k| acc.add_ref(&a[i][k].mul_ref(&b[k][j]))))
                .collect()
        })
        .collect()
}

/// Outcome of the Fourier-transform morphism check for one polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    /// `f(t^{-1} n_x t n_x^{-1})`.
    pub pullback: ExpSum,
    /// FT(D(f)).
    pub transform: ExpSum,
    pub d_bar: RationalFn,
    /// `f(n_x^{-1})`.
    pub at_nx_inverse: RationalFn,
    /// `f(n_x)`.
    pub at_nx: RationalFn,
}

impl MorphismReport {
    pub fn transform_matches(&self) -> bool {
        self.pullback == self.transform
    }

    pub fn zero_coefficient_matches(&self) -> bool {
        self.transform.zero_coefficient() == self.d_bar
    }

    pub fn d_bar_is_nx_inverse_value(&self) -> bool {
        self.d_bar == self.at_nx_inverse
    }
}

/// The measure machinery for SL_n.
#[derive(Debug)]
pub struct Measures {
    ring: CoordRing,
    chart: TorusChart,
    ft_cache: Mutex<HashMap<Vec<usize>, ExpSum>>,
}

impl Measures {
    pub fn new(ring: &CoordRing) -> Self {
        Measures {
            ring: ring.clone(),
            chart: TorusChart::simple_root(ring.cartan()),
            ft_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn ring(&self) -> &CoordRing {
        &self.ring
    }

    pub fn chart(&self) -> &TorusChart {
        &self.chart
    }

    fn rank(&self) -> usize {
        self.ring.rank()
    }

    /// `1 / ⟨β, ·⟩`.
    fn inverse_form(&self, beta: &RootVector) -> RationalFn {
        RationalFn::inverse_linear(&self.chart.root_form(beta)).expect("nonzero root form")
    }

    /// `D̄_i = Π_{k=1}^p 1 / (α_{i_k} + ⋯ + α_{i_p})`.
    pub fn d_bar_seq(&self, seq: &[usize]) -> RationalFn {
        let mut out = RationalFn::one(self.rank());
        let mut suffix = RootVector::zero(self.rank());
        for &i in seq.iter().rev() {
            suffix = suffix.add(&RootVector::simple(self.rank(), i));
            out = &out * &self.inverse_form(&suffix);
        }
        out
    }

    /// All words whose letter counts are ν, in lexicographic order.
    pub fn sequences(&self, nu: &RootVector) -> Vec<Vec<usize>> {
        fn rec(counts: &mut Vec<i64>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if counts.iter().all(|&c| c == 0) {
                out.push(cur.clone());
                return;
            }
            for i in 0..counts.len() {
                if counts[i] > 0 {
                    counts[i] -= 1;
                    cur.push(i);
                    rec(counts, cur, out);
                    cur.pop();
                    counts[i] += 1;
                }
            }
        }
        let mut out = Vec::new();
        if nu.is_nonnegative() {
            rec(&mut nu.0.clone(), &mut Vec::new(), &mut out);
        }
        out
    }

    fn homogeneous_parts(&self, f: &MultiPoly) -> BTreeMap<RootVector, MultiPoly> {
        let mut parts: BTreeMap<RootVector, MultiPoly> = BTreeMap::new();
        for (e, c) in f.terms() {
            let w = self.ring.monomial_weight(e);
            parts
                .entry(w)
                .or_insert_with(|| MultiPoly::zero(self.ring.nvars()))
                .add_term(e.clone(), c.clone());
        }
        parts
    }

    /// `D̄(f) = Σ_i ⟨e_i, f⟩ D̄_i`.
    pub fn d_bar(&self, f: &MultiPoly) -> RationalFn {
        let mut out = RationalFn::zero(self.rank());
        for (nu, part) in self.homogeneous_parts(f) {
            for seq in self.sequences(&nu) {
                let c = self.ring.pairing(&seq, &part);
                if !c.is_zero() {
                    out = &out + &self.d_bar_seq(&seq).scale(&c);
                }
            }
        }
        out
    }

    /// FT(D_i): the simplex transform on the nodes `β_k − ν`, where
    /// `β_k = α_{i_1} + ⋯ + α_{i_k}` and `ν = β_p`.
    pub fn ft_d_seq(&self, seq: &[usize]) -> ExpSum {
        if let Some(v) = self.ft_cache.lock().expect("cache lock").get(seq) {
            return v.clone();
        }
        let r = self.rank();
        let mut nodes = vec![RootVector::zero(r)];
        for &i in seq {
            let next = nodes.last().unwrap().add(&RootVector::simple(r, i));
            nodes.push(next);
        }
        let nu = nodes.last().unwrap().clone();
        let shifted: Vec<RootVector> = nodes.iter().map(|b| b.sub(&nu)).collect();
        let v = ft_simplex(&self.chart, &shifted);
        self.ft_cache.lock().expect("cache lock").insert(seq.to_vec(), v.clone());
        v
    }

    /// FT(D(f)) = Σ_i ⟨e_i, f⟩ FT(D_i).
    pub fn ft_d(&self, f: &MultiPoly) -> ExpSum {
        let mut out = ExpSum::zero(&self.chart);
        for (nu, part) in self.homogeneous_parts(f) {
            for seq in self.sequences(&nu) {
                let c = self.ring.pairing(&seq, &part);
                if !c.is_zero() {
                    out = &out + &self.ft_d_seq(&seq).scale(&c);
                }
            }
        }
        out
    }

    /// `x_j − x_i` as a linear form in the simple-root chart.
    fn coordinate_gap(&self, i: usize, j: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.rank()];
        for c in v.iter_mut().take(j).skip(i) {
            *c = rat(-1);
        }
        v
    }

    /// The unique `n_x ∈ N` with `n_x x n_x^{-1} = x + e`, solved along
    /// superdiagonals: `n_ij (x_j − x_i) = n_{i+1,j}`.
    pub fn solve_nx(&self) -> UnipotentSymbolic {
        let n = self.ring.n();
        let nv = self.rank();
        let mut m = identity_fn(n, nv);
        for d in 1..n {
            for i in 0..n - d {
                let j = i + d;
                let gap = RationalFn::inverse_linear(&self.coordinate_gap(i, j)).expect("i < j");
                m[i][j] = &m[i + 1][j] * &gap;
            }
        }
        UnipotentSymbolic { entries: m }
    }

    /// Entries of `n x − (x + e) n`; all zero exactly when `n = n_x`.
    pub fn nx_residual(&self, nmat: &UnipotentSymbolic) -> Vec<Vec<RationalFn>> {
        let n = self.ring.n();
        let nv = self.rank();
        let mut out = vec![vec![RationalFn::zero(nv); n]; n];
        for i in 0..n {
            for j in 0..n {
                // (n x)_ij − (x n)_ij = n_ij (x_j − x_i); (e n)_ij = n_{i+1,j}
                let gap = RationalFn::from_poly(MultiPoly::linear(&self.coordinate_gap(i, j)));
                let mut v = &nmat.entries[i][j] * &gap;
                if i + 1 < n {
                    v = &v - &nmat.entries[i + 1][j];
                }
                out[i][j] = v;
            }
        }
        out
    }

    fn eval_matrix(&self, f: &MultiPoly, m: &[Vec<RationalFn>]) -> RationalFn {
        self.ring.eval_at(f, m, &RationalFn::one(self.rank()))
    }

    /// `f(t^{-1} n_x t n_x^{-1})` as an exponential sum.
    pub fn pullback(&self, f: &MultiPoly) -> ExpSum {
        let n = self.ring.n();
        let r = self.rank();
        let nx = self.solve_nx();
        let inv = nx.inverse();
        let conj: Vec<Vec<ExpSum>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut beta = vec![0; r];
                        for c in beta.iter_mut().take(j.max(i)).skip(i) {
                            *c = -1;
                        }
                        ExpSum::exponential(&self.chart, &RootVector(beta), nx.entries[i][j].clone())
                    })
                    .collect()
            })
            .collect();
        let inv_e: Vec<Vec<ExpSum>> =
            inv.entries.iter().map(|row| row.iter().map(|x| ExpSum::from_fn(&self.chart, x.clone())).collect()).collect();
        let m = matmul(&conj, &inv_e);
        self.ring.eval_at(f, &m, &ExpSum::one(&self.chart))
    }

    pub fn morphism_check(&self, f: &MultiPoly) -> MorphismReport {
        let nx = self.solve_nx();
        let inv = nx.inverse();
        MorphismReport {
            pullback: self.pullback(f),
            transform: self.ft_d(f),
            d_bar: self.d_bar(f),
            at_nx_inverse: self.eval_matrix(f, &inv.entries),
            at_nx: self.eval_matrix(f, &nx.entries),
        }
    }
}

/// `e^{β} · s`: the transform of the measure translated by β.
pub fn translate(s: &ExpSum, beta: &RootVector) -> ExpSum {
    let nv = s.chart().rank();
    s * &ExpSum::exponential(s.chart(), beta, RationalFn::one(nv))
}

/// Convex hull of the exponents with nonzero coefficient.
pub fn support_hull(s: &ExpSum) -> Result<LatticePolytope> {
    hull(&s.support())
}

/// A direction in the chart on which no denominator of `s` vanishes.
pub fn generic_direction(s: &ExpSum) -> Vec<Rational> {
    let r = s.chart().rank();
    for base in [3i64, 5, 7, 11, 13, 17, 19, 23] {
        let v: Vec<Rational> = (0..r).map(|k| Rational::from_integer(BigInt::from(base).pow(k as u32))).collect();
        if s.terms().values().all(|f| f.restrict_to_line(&v).is_ok()) {
            return v;
        }
    }
    panic!("no generic direction among the candidates");
}

/// Laurent coefficients of `s ↦ S(s·v)` for powers `lo..=hi`.
pub fn line_expansion(s: &ExpSum, v: &[Rational], lo: i64, hi: i64) -> Result<BTreeMap<i64, Rational>> {
    let mut out: BTreeMap<i64, Rational> = (lo..=hi).map(|p| (p, Rational::zero())).collect();
    for (beta, f) in s.terms() {
        let z = s.chart().root_value(beta, v);
        let (num, c, k) = f.restrict_to_line(v)?;
        // term n_d s^{d−K} / C times Σ_m z^m s^m / m!
        for (d, nd) in num.iter().enumerate() {
            if nd.is_zero() {
                continue;
            }
            let base = d as i64 - k as i64;
            let mut zm = Rational::from_integer(1.into());
            let mut m = 0i64;
            while base + m <= hi {
                if base + m >= lo {
                    *out.get_mut(&(base + m)).unwrap() += nd * &zm / &c;
                }
                m += 1;
                zm = zm * &z / rat(m);
            }
        }
    }
    Ok(out)
}

/// Highest pole order among the coefficients of `s`.
pub fn pole_order(s: &ExpSum) -> i64 {
    s.terms()
        .values()
        .map(|f| f.denominator_factors().values().sum::<u32>() as i64)
        .max()
        .unwrap_or(0)
}

/// Moments `∫ ⟨y, v⟩^k dμ`, `k = 0..=kmax`, of the measure with Fourier
/// transform `s`; errors if the expansion has a pole.
pub fn moments(s: &ExpSum, v: &[Rational], kmax: i64) -> Result<Vec<Rational>> {
    let lo = -pole_order(s);
    let series = line_expansion(s, v, lo.min(0), kmax)?;
    for (p, c) in &series {
        if *p < 0 && !c.is_zero() {
            return Err(Error::Inconsistent(format!("Fourier transform has a pole of order {}", -p)));
        }
    }
    let mut out = Vec::new();
    let mut fact = rat(1);
    for k in 0..=kmax {
        if k > 0 {
            fact *= rat(k);
        }
        out.push(&series[&k] * &fact);
    }
    Ok(out)
}

/// Total mass of the measure with Fourier transform `s`.
pub fn total_mass(s: &ExpSum) -> Result<Rational> {
    let v = generic_direction(s);
    Ok(moments(s, &v, 0)?[0].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    #[test]
    fn sl2_anchor_chain() {
        let ring = CoordRing::new(2).unwrap();
        let m = Measures::new(&ring);
        let x = ring.parse("x").unwrap();
        assert_eq!(ring.pairing(&[0], &x), rat(1));
        assert_eq!(m.d_bar(&x).to_text(&["a1"]), "1/(a1)");
        let nx = m.solve_nx();
        assert_eq!(nx.entries[0][1], -&m.d_bar(&x));
        let rep = m.morphism_check(&x);
        assert!(rep.transform_matches());
        assert!(rep.zero_coefficient_matches());
        assert!(rep.d_bar_is_nx_inverse_value());
    }

    #[test]
    fn nx_residual_vanishes_and_detects_perturbation() {
        for n in 2..=4 {
            let ring = CoordRing::new(n).unwrap();
            let m = Measures::new(&ring);
            let mut nx = m.solve_nx();
            assert!(m.nx_residual(&nx).iter().flatten().all(|e| e.is_zero()));
            nx.entries[0][n - 1] = &nx.entries[0][n - 1] + &RationalFn::one(n - 1);
            assert!(!m.nx_residual(&nx).iter().flatten().all(|e| e.is_zero()));
        }
    }

    #[test]
    fn sl3_morphism_on_generators() {
        let ring = CoordRing::new(3).unwrap();
        let m = Measures::new(&ring);
        for f in [ring.parse("x").unwrap(), ring.parse("y").unwrap(), ring.parse("z").unwrap(), ring.parse("x*y - z").unwrap()] {
            let rep = m.morphism_check(&f);
            assert!(rep.transform_matches(), "{}", ring.to_text(&f));
            assert!(rep.zero_coefficient_matches());
            assert!(rep.d_bar_is_nx_inverse_value());
        }
    }

    #[test]
    fn shuffle_of_two_letters() {
        let ring = CoordRing::new(3).unwrap();
        let m = Measures::new(&ring);
        let lhs = &m.ft_d_seq(&[0]) * &m.ft_d_seq(&[1]);
        let rhs = &m.ft_d_seq(&[0, 1]) + &m.ft_d_seq(&[1, 0]);
        assert_eq!(lhs, rhs);
        let lhs = &m.d_bar_seq(&[0]) * &m.d_bar_seq(&[1]);
        let rhs = &m.d_bar_seq(&[0, 1]) + &m.d_bar_seq(&[1, 0]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mass_and_first_moment_of_a_segment() {
        let ring = CoordRing::new(3).unwrap();
        let m = Measures::new(&ring);
        for seq in [vec![0], vec![0, 1], vec![1, 0, 1], vec![0, 0, 1, 1]] {
            let s = m.ft_d_seq(&seq);
            let fact: i64 = (1..=seq.len() as i64).product();
            assert_eq!(total_mass(&s).unwrap(), ratio(1, fact));
        }
        // D_(1) is Lebesgue on the segment from −α1 to 0
        let s = m.ft_d_seq(&[0]);
        let mom = moments(&s, &[rat(1), rat(1)], 2).unwrap();
        assert_eq!(mom, vec![rat(1), ratio(-1, 2), ratio(1, 3)]);
    }
}
