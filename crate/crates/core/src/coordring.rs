//! The coordinate ring C[N] of the unipotent upper-triangular subgroup of
//! SL_n, its left and right Chevalley derivations, the pairing with U(n),
//! explicit biperfect bases, and their verification.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde_json::json;

use crate::field::Rationals;
use crate::linalg::{self, Matrix};
use crate::rootdata::{CartanData, RootVector};
use crate::symbolic::{CommRing, MultiPoly};
use crate::{rat, Error, Rational, Result};

const Q: Rationals = Rationals;

/// Largest n handled for SL_n.
pub const MAX_N: usize = 4;

/// Schema tag for JSON exports of basis families.
pub const FAMILY_SCHEMA: &str = "biperfect.basis-family.v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// Translation `g ↦ exp(s e_i) g`.
    Left,
    /// Translation `g ↦ g exp(s e_i)`.
    Right,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// C[N] for SL_n with variables `x_{ij}`, `i < j`, ordered by
/// `(j − i, i)`: superdiagonal entries first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordRing {
    n: usize,
    vars: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    cartan: CartanData,
}

impl CoordRing {
    pub fn new(n: usize) -> Result<Self> {
        if !(2..=MAX_N).contains(&n) {
            return Err(Error::RankTooLarge { rank: n, bound: MAX_N, what: "SL_n coordinate ring (n from 2)" });
        }
        let mut vars = Vec::new();
        for d in 1..n {
            for i in 0..n - d {
                vars.push((i, i + d));
            }
        }
        let index = vars.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        Ok(CoordRing { n, vars, index, cartan: CartanData::type_a(n - 1) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Position of `x_{ij}` (0-based, `i < j`).
    pub fn var_index(&self, i: usize, j: usize) -> Option<usize> {
        self.index.get(&(i, j)).copied()
    }

    pub fn var(&self, i: usize, j: usize) -> MultiPoly {
        MultiPoly::var(self.nvars(), self.var_index(i, j).expect("i < j < n"))
    }

    pub fn one(&self) -> MultiPoly {
        MultiPoly::one(self.nvars())
    }

    /// `x` for SL2, `x, y, z` for SL3, `x12, …` otherwise.
    pub fn var_names(&self) -> Vec<String> {
        match self.n {
            2 => vec!["x".into()],
            3 => vec!["x".into(), "y".into(), "z".into()],
            _ => self.vars.iter().map(|(i, j)| format!("x{}{}", i + 1, j + 1)).collect(),
        }
    }

    pub fn to_text(&self, f: &MultiPoly) -> String {
        let names = self.var_names();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.to_text(&refs)
    }

    /// Parse a polynomial such as `x*y - z`, `2*x12^2*x23` or `(x+1)^2`.
    pub fn parse(&self, text: &str) -> Result<MultiPoly> {
        let mut names: HashMap<String, usize> = HashMap::new();
        for (k, (i, j)) in self.vars.iter().enumerate() {
            names.insert(format!("x{}{}", i + 1, j + 1), k);
        }
        for (k, name) in self.var_names().into_iter().enumerate() {
            names.insert(name, k);
        }
        let mut p = PolyParser { chars: text.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, names, nvars: self.nvars() };
        let f = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(Error::Parse(format!("unexpected '{}' in polynomial", p.chars[p.pos])));
        }
        Ok(f)
    }

    /// Weight `α_i + … + α_{j−1}` of `x_{ij}`.
    pub fn var_weight(&self, k: usize) -> RootVector {
        let (i, j) = self.vars[k];
        let mut v = vec![0; self.rank()];
        for c in v.iter_mut().take(j).skip(i) {
            *c = 1;
        }
        RootVector(v)
    }

    pub fn monomial_weight(&self, exps: &[u32]) -> RootVector {
        let mut w = RootVector::zero(self.rank());
        for (k, &e) in exps.iter().enumerate() {
            if e > 0 {
                w = w.add(&self.var_weight(k).scale(e as i64));
            }
        }
        w
    }

    /// Weight of a homogeneous polynomial (`None` if mixed or zero).
    pub fn weight(&self, f: &MultiPoly) -> Option<RootVector> {
        let mut it = f.terms().keys().map(|e| self.monomial_weight(e));
        let w = it.next()?;
        it.all(|x| x == w).then_some(w)
    }

    /// Vector field of e_i as `(multiplier variable, derivative variable)`.
    fn field(&self, side: Side, i: usize) -> Vec<(Option<usize>, usize)> {
        let (a, b) = (i, i + 1);
        let mut out = vec![(None, self.index[&(a, b)])];
        match side {
            // row a += s · row b
            Side::Left => {
                for j in b + 1..self.n {
                    out.push((Some(self.index[&(b, j)]), self.index[&(a, j)]));
                }
            }
            // column b += s · column a
            Side::Right => {
                for k in 0..a {
                    out.push((Some(self.index[&(k, a)]), self.index[&(k, b)]));
                }
            }
        }
        out
    }

    /// Derivation e_i (0-based) for the given side.
    pub fn e(&self, side: Side, i: usize, f: &MultiPoly) -> MultiPoly {
        assert!(i < self.rank(), "index out of range");
        let mut out = MultiPoly::zero(self.nvars());
        for (mult, d) in self.field(side, i) {
            for (exps, c) in f.terms() {
                if exps[d] == 0 {
                    continue;
                }
                let mut e = exps.clone();
                let coeff = c * rat(e[d] as i64);
                e[d] -= 1;
                if let Some(m) = mult {
                    e[m] += 1;
                }
                out.add_term(e, coeff);
            }
        }
        out
    }

    pub fn e_left(&self, i: usize, f: &MultiPoly) -> MultiPoly {
        self.e(Side::Left, i, f)
    }

    pub fn e_right(&self, i: usize, f: &MultiPoly) -> MultiPoly {
        self.e(Side::Right, i, f)
    }

    pub fn e_power(&self, side: Side, i: usize, k: u64, f: &MultiPoly) -> MultiPoly {
        let mut g = f.clone();
        for _ in 0..k {
            if g.is_zero() {
                break;
            }
            g = self.e(side, i, &g);
        }
        g
    }

    /// Largest k with `e_i^k f ≠ 0`.
    pub fn epsilon(&self, side: Side, i: usize, f: &MultiPoly) -> u64 {
        let mut g = self.e(side, i, f);
        let mut k = 0;
        while !g.is_zero() {
            k += 1;
            g = self.e(side, i, &g);
        }
        k
    }

    /// `⟨e_{s_1} ⋯ e_{s_p}, f⟩`: apply `e_{s_p}` first and evaluate at the
    /// identity.
    pub fn pairing(&self, seq: &[usize], f: &MultiPoly) -> Rational {
        let mut g = f.clone();
        for &i in seq.iter().rev() {
            g = self.e_left(i, &g);
            if g.is_zero() {
                return Rational::zero();
            }
        }
        g.constant_term()
    }

    /// Exponent vectors of the monomials of weight ν, in increasing order.
    pub fn monomials(&self, nu: &RootVector) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.nvars()];
        self.monomials_rec(0, nu, &mut exps, &mut out);
        out.sort();
        out
    }

    fn monomials_rec(&self, k: usize, rest: &RootVector, exps: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == self.nvars() {
            if rest.is_zero() {
                out.push(exps.clone());
            }
            return;
        }
        let w = self.var_weight(k);
        let mut r = rest.clone();
        let mut e = 0;
        while r.is_nonnegative() {
            exps[k] = e;
            self.monomials_rec(k + 1, &r, exps, out);
            r = r.sub(&w);
            e += 1;
        }
        exps[k] = 0;
    }

    pub fn graded_dim(&self, nu: &RootVector) -> usize {
        self.monomials(nu).len()
    }

    /// Coordinates of a homogeneous polynomial in a monomial list.
    pub fn coordinates(&self, f: &MultiPoly, monomials: &[Vec<u32>]) -> Result<Vec<Rational>> {
        let pos: HashMap<&Vec<u32>, usize> = monomials.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let mut v = vec![Rational::zero(); monomials.len()];
        for (e, c) in f.terms() {
            let k = pos.get(e).ok_or_else(|| Error::Inconsistent("polynomial has the wrong weight".into()))?;
            v[*k] = c.clone();
        }
        Ok(v)
    }

    /// The generic element of N as a matrix of polynomials.
    pub fn generic_matrix(&self) -> Vec<Vec<MultiPoly>> {
        let nv = self.nvars();
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| match i.cmp(&j) {
                        std::cmp::Ordering::Equal => MultiPoly::one(nv),
                        std::cmp::Ordering::Less => self.var(i, j),
                        std::cmp::Ordering::Greater => MultiPoly::zero(nv),
                    })
                    .collect()
            })
            .collect()
    }

    /// Entries of the inverse of the generic element.
    pub fn inverse_matrix(&self) -> Vec<Vec<MultiPoly>> {
        let g = self.generic_matrix();
        let nv = self.nvars();
        let n = self.n;
        // g^{-1} = Σ_k (1 − g)^k
        let mut nil: Vec<Vec<MultiPoly>> = g
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().enumerate().map(|(j, x)| if i == j { MultiPoly::zero(nv) } else { -x }).collect())
            .collect();
        let mut inv: Vec<Vec<MultiPoly>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { MultiPoly::one(nv) } else { MultiPoly::zero(nv) }).collect()).collect();
        let base = nil.clone();
        for _ in 1..n {
            for i in 0..n {
                for j in 0..n {
                    inv[i][j] = &inv[i][j] + &nil[i][j];
                }
            }
            nil = matmul_poly(&nil, &base);
        }
        inv
    }

    /// Pullback along `g ↦ g^{-1}`.
    pub fn star(&self, f: &MultiPoly) -> MultiPoly {
        let inv = self.inverse_matrix();
        let values: Vec<MultiPoly> = self.vars.iter().map(|&(i, j)| inv[i][j].clone()).collect();
        f.eval_in(&values, &MultiPoly::one(self.nvars()))
    }

    /// Evaluate `f` at a matrix with entries in any commutative ring.
    pub fn eval_at<R: CommRing>(&self, f: &MultiPoly, matrix: &[Vec<R>], one: &R) -> R {
        let values: Vec<R> = self.vars.iter().map(|&(i, j)| matrix[i][j].clone()).collect();
        f.eval_in(&values, one)
    }
}

fn matmul_poly(a: &[Vec<MultiPoly>], b: &[Vec<MultiPoly>]) -> Vec<Vec<MultiPoly>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(a[i][0].zero_like(), |acc, k| &acc + &(&a[i][k] * &b[k][j])))
                .collect()
        })
        .collect()
}

struct PolyParser {
    chars: Vec<char>,
    pos: usize,
    names: HashMap<String, usize>,
    nvars: usize,
}

impl PolyParser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = MultiPoly::zero(self.nvars);
        let mut sign = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -1
            }
            Some('+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
            match self.peek() {
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let e: u32 = self.chars[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| Error::Parse("expected an exponent after '^'".into()))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '/') {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                let r: Rational = s.parse().map_err(|_| Error::Parse(format!("bad number '{s}'")))?;
                Ok(MultiPoly::constant(self.nvars, r))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                let k = self.names.get(&s).ok_or_else(|| Error::Parse(format!("unknown variable '{s}'")))?;
                Ok(MultiPoly::var(self.nvars, *k))
            }
            other => Err(Error::Parse(format!("unexpected {:?} in polynomial", other))),
        }
    }
}

/// One element of a candidate basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyElement {
    pub weight: RootVector,
    pub poly: MultiPoly,
    pub label: String,
}

/// A finite piece of a candidate basis of C[N]: all elements whose weight
/// has every coordinate at most `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisFamily {
    pub ring: CoordRing,
    pub bound: i64,
    pub elements: Vec<FamilyElement>,
}

/// All weights of N^r with coordinates at most `bound`, by height.
pub fn box_weights(rank: usize, bound: i64) -> Vec<RootVector> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (0..=bound).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    let mut ws: Vec<RootVector> = out.into_iter().map(RootVector).collect();
    ws.sort_by_key(|w| (w.height(), w.clone()));
    ws
}

impl BasisFamily {
    /// Build from polynomials, computing weights; rejects inhomogeneous input.
    pub fn new(ring: &CoordRing, bound: i64, polys: Vec<(String, MultiPoly)>) -> Result<Self> {
        let mut elements = Vec::new();
        for (label, poly) in polys {
            let weight = ring
                .weight(&poly)
                .ok_or_else(|| Error::NotWeightBasis(format!("{label} is not homogeneous")))?;
            if weight.0.iter().all(|&c| c <= bound) {
                elements.push(FamilyElement { weight, poly, label });
            }
        }
        elements.sort_by(|a, b| (a.weight.height(), &a.weight, &a.label).cmp(&(b.weight.height(), &b.weight, &b.label)));
        Ok(BasisFamily { ring: ring.clone(), bound, elements })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn indices_of_weight(&self, nu: &RootVector) -> Vec<usize> {
        (0..self.elements.len()).filter(|&k| self.elements[k].weight == *nu).collect()
    }

    pub fn find(&self, poly: &MultiPoly) -> Option<usize> {
        self.elements.iter().position(|e| e.poly == *poly)
    }

    /// Replace one polynomial (used to build mutated families).
    pub fn replace(&mut self, k: usize, poly: MultiPoly) {
        self.elements[k].poly = poly;
    }

    pub fn to_json(&self, report: Option<&BiperfectReport>) -> serde_json::Value {
        let elements: Vec<serde_json::Value> = self
            .elements
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let mut v = json!({
                    "label": e.label,
                    "weight": e.weight.0,
                    "polynomial": self.ring.to_text(&e.poly),
                });
                if let Some(r) = report {
                    v["epsilon"] = json!(r.epsilon[k]);
                    v["epsilon_star"] = json!(r.epsilon_star[k]);
                }
                v
            })
            .collect();
        json!({
            "schema": FAMILY_SCHEMA,
            "group": format!("SL{}", self.ring.n()),
            "bound": self.bound,
            "elements": elements,
        })
    }
}

/// The family `{x^a}` for SL2, `a ≤ bound`.
pub fn sl2_basis(bound: i64) -> BasisFamily {
    let ring = CoordRing::new(2).expect("n = 2");
    let polys = (0..=bound).map(|a| (format!("x^{a}"), ring.var(0, 1).pow(a as u32))).collect();
    BasisFamily::new(&ring, bound, polys).expect("monomials are homogeneous")
}

/// The SL3 family `{x^a z^b (xy−z)^c} ∪ {y^a z^b (xy−z)^c}` on weights with
/// coordinates at most `bound`.
pub fn sl3_basis(bound: i64) -> BasisFamily {
    let ring = CoordRing::new(3).expect("n = 3");
    let x = ring.var(0, 1);
    let y = ring.var(1, 2);
    let z = ring.var(0, 2);
    let w = &(&x * &y) - &z;
    let mut polys = Vec::new();
    let b = bound as u32;
    for a in 0..=b {
        for bz in 0..=b {
            for c in 0..=b {
                let tail = &z.pow(bz) * &w.pow(c);
                polys.push((format!("x^{a} z^{bz} (xy-z)^{c}"), &x.pow(a) * &tail));
                if a > 0 {
                    polys.push((format!("y^{a} z^{bz} (xy-z)^{c}"), &y.pow(a) * &tail));
                }
            }
        }
    }
    BasisFamily::new(&ring, bound, polys).expect("products of weight vectors are homogeneous")
}

/// A violated condition found by [`verify_biperfect`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyFailure {
    pub element: Option<usize>,
    pub side: Option<Side>,
    pub i: Option<usize>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiperfectReport {
    pub weights_checked: usize,
    /// `epsilon[k][i]` for the left action, `epsilon_star` for the right.
    pub epsilon: Vec<Vec<u64>>,
    pub epsilon_star: Vec<Vec<u64>>,
    /// `left_partner[k][i]` is the index of ẽ_i(b_k); `right_partner` for ẽ_i*.
    pub left_partner: Vec<Vec<Option<usize>>>,
    pub right_partner: Vec<Vec<Option<usize>>>,
    /// Residuals `e_i b − ε ẽ_i(b)` that are nonzero and were certified to lie
    /// in `ker e_i^{ε−1}`.
    pub certified_residuals: usize,
    pub failures: Vec<VerifyFailure>,
}

impl BiperfectReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn failure(element: Option<usize>, side: Option<Side>, i: Option<usize>, reason: String) -> VerifyFailure {
    VerifyFailure { element, side, i, reason }
}

/// Rank of a list of homogeneous polynomials of weight ν.
fn poly_rank(ring: &CoordRing, polys: &[MultiPoly], nu: &RootVector) -> Result<usize> {
    let mons = ring.monomials(nu);
    let rows: Matrix<Rational> = polys.iter().map(|p| ring.coordinates(p, &mons)).collect::<Result<_>>()?;
    Ok(linalg::rank(&Q, &rows, mons.len()))
}

/// Verify that the family is a basis of each graded piece in its weight
/// box, contains 1, and is perfect for both actions, including
/// compatibility with the kernels of all powers of every e_i.
pub fn verify_biperfect(family: &BasisFamily) -> Result<BiperfectReport> {
    let ring = &family.ring;
    let r = ring.rank();
    let n_el = family.len();
    let mut failures = Vec::new();
    if family.find(&ring.one()).is_none() {
        failures.push(failure(None, None, None, "1 is not in the family".into()));
    }
    let weights = box_weights(r, family.bound);
    for nu in &weights {
        let idx = family.indices_of_weight(nu);
        let dim = ring.graded_dim(nu);
        let polys: Vec<MultiPoly> = idx.iter().map(|&k| family.elements[k].poly.clone()).collect();
        let rank = poly_rank(ring, &polys, nu)?;
        if idx.len() != dim || rank != dim {
            failures.push(failure(
                None,
                None,
                None,
                format!("weight {nu}: {} elements of rank {rank}, graded piece has dim {dim}", idx.len()),
            ));
        }
    }
    let mut eps = [vec![vec![0u64; r]; n_el], vec![vec![0u64; r]; n_el]];
    let mut partners = [vec![vec![None; r]; n_el], vec![vec![None; r]; n_el]];
    let mut certified = 0;
    for (s, side) in [Side::Left, Side::Right].into_iter().enumerate() {
        for k in 0..n_el {
            for i in 0..r {
                eps[s][k][i] = ring.epsilon(side, i, &family.elements[k].poly);
            }
        }
        for k in 0..n_el {
            let el = &family.elements[k];
            for i in 0..r {
                let e = eps[s][k][i];
                if e == 0 {
                    continue;
                }
                let target = el.weight.sub(&ring.cartan().simple_root(i));
                let eb = ring.e(side, i, &el.poly);
                let mut found = None;
                for p in family.indices_of_weight(&target) {
                    if eps[s][p][i] + 1 != e {
                        continue;
                    }
                    let residual = &eb - &family.elements[p].poly.scale(&rat(e as i64));
                    if ring.e_power(side, i, e - 1, &residual).is_zero() {
                        found = Some((p, residual));
                        break;
                    }
                }
                match found {
                    Some((p, residual)) => {
                        partners[s][k][i] = Some(p);
                        if !residual.is_zero() {
                            certified += 1;
                        }
                    }
                    None => failures.push(failure(
                        Some(k),
                        Some(side),
                        Some(i),
                        format!(
                            "{}: e{} ({}) of {} has no partner modulo ker e{}^{}",
                            side.name(),
                            i + 1,
                            ring.to_text(&eb),
                            el.label,
                            i + 1,
                            e - 1
                        ),
                    )),
                }
            }
        }
        // good-basis check: rank of {e_i^m b} on each graded piece equals #{ε_i(b) ≥ m}
        for nu in &weights {
            let idx = family.indices_of_weight(nu);
            for i in 0..r {
                let max = idx.iter().map(|&k| eps[s][k][i]).max().unwrap_or(0);
                for m in 1..=max {
                    let target = nu.sub(&ring.cartan().simple_root(i).scale(m as i64));
                    let imgs: Vec<MultiPoly> =
                        idx.iter().map(|&k| ring.e_power(side, i, m, &family.elements[k].poly)).collect();
                    let rank = poly_rank(ring, &imgs, &target)?;
                    let count = idx.iter().filter(|&&k| eps[s][k][i] >= m).count();
                    if rank != count {
                        failures.push(failure(
                            None,
                            Some(side),
                            Some(i),
                            format!("weight {nu}: e{}^{m} has rank {rank} but {count} elements survive", i + 1),
                        ));
                    }
                }
            }
        }
    }
    let [epsilon, epsilon_star] = eps;
    let [left_partner, right_partner] = partners;
    Ok(BiperfectReport {
        weights_checked: weights.len(),
        epsilon,
        epsilon_star,
        left_partner,
        right_partner,
        certified_residuals: certified,
        failures,
    })
}

/// Bicrystal read off a verified family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisCrystal {
    pub weights: Vec<RootVector>,
    pub epsilon: Vec<Vec<u64>>,
    pub epsilon_star: Vec<Vec<u64>>,
    pub e: Vec<Vec<Option<usize>>>,
    pub e_star: Vec<Vec<Option<usize>>>,
}

impl BasisCrystal {
    /// Restrict to elements with height at most `height`.
    pub fn from_report(family: &BasisFamily, report: &BiperfectReport, height: i64) -> Result<Self> {
        if !report.passed() {
            return Err(Error::Verification(format!("{} failures", report.failures.len())));
        }
        let keep: Vec<usize> = (0..family.len()).filter(|&k| family.elements[k].weight.height() <= height).collect();
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(a, &k)| (k, a)).collect();
        let remap = |v: &Vec<Option<usize>>| v.iter().map(|p| p.map(|q| pos[&q])).collect::<Vec<_>>();
        Ok(BasisCrystal {
            weights: keep.iter().map(|&k| family.elements[k].weight.clone()).collect(),
            epsilon: keep.iter().map(|&k| report.epsilon[k].clone()).collect(),
            epsilon_star: keep.iter().map(|&k| report.epsilon_star[k].clone()).collect(),
            e: keep.iter().map(|&k| remap(&report.left_partner[k])).collect(),
            e_star: keep.iter().map(|&k| remap(&report.right_partner[k])).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        let mut sizes = Vec::new();
        for w in &self.weights {
            let h = w.height() as usize;
            if sizes.len() <= h {
                sizes.resize(h + 1, 0);
            }
            sizes[h] += 1;
        }
        sizes
    }
}

/// Result of matching a basis crystal with B(∞).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchOutcome {
    /// Number of bijections respecting wt, ε, ε* and all crystal edges
    /// (counting stops at `limit`).
    pub count: usize,
    /// The first bijection found: `image[k]` is the element for basis index k.
    pub bijection: Option<Vec<crate::crystal::BinfElement>>,
}

/// Count bijections between the basis crystal and the B(∞) elements of the
/// same weights that preserve wt, ε, ε* and the ẽ_i, ẽ_i* edges.
pub fn match_binf(crystal: &BasisCrystal, binf: &crate::crystal::Binf, limit: usize) -> Result<MatchOutcome> {
    use crate::crystal::BinfElement;
    let n = crystal.len();
    let mut candidates: Vec<Vec<BinfElement>> = Vec::with_capacity(n);
    let mut by_weight: BTreeMap<RootVector, Vec<BinfElement>> = BTreeMap::new();
    for k in 0..n {
        let w = &crystal.weights[k];
        let pool = by_weight.entry(w.clone()).or_insert_with(|| binf.elements_of_weight(w)).clone();
        let fits: Vec<BinfElement> = pool
            .into_iter()
            .filter(|b| binf.epsilons(b) == crystal.epsilon[k] && binf.epsilon_stars(b) == crystal.epsilon_star[k])
            .collect();
        candidates.push(fits);
    }
    for (w, pool) in &by_weight {
        let count = crystal.weights.iter().filter(|x| *x == w).count();
        if count != pool.len() {
            return Ok(MatchOutcome { count: 0, bijection: None });
        }
    }
    // elements are in height order, so edge targets are assigned first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&k| crystal.weights[k].height());
    let mut state = MatchState { image: vec![None; n], used: BTreeMap::new(), count: 0, first: None, limit };
    match_rec(crystal, binf, &candidates, &order, 0, &mut state)?;
    Ok(MatchOutcome { count: state.count, bijection: state.first })
}

struct MatchState {
    image: Vec<Option<crate::crystal::BinfElement>>,
    used: BTreeMap<crate::crystal::BinfElement, usize>,
    count: usize,
    first: Option<Vec<crate::crystal::BinfElement>>,
    limit: usize,
}

fn match_rec(
    crystal: &BasisCrystal,
    binf: &crate::crystal::Binf,
    candidates: &[Vec<crate::crystal::BinfElement>],
    order: &[usize],
    depth: usize,
    st: &mut MatchState,
) -> Result<()> {
    if st.count >= st.limit {
        return Ok(());
    }
    if depth == order.len() {
        st.count += 1;
        if st.first.is_none() {
            st.first = Some(st.image.iter().map(|x| x.clone().expect("complete")).collect());
        }
        return Ok(());
    }
    let k = order[depth];
    for c in &candidates[k] {
        if st.used.contains_key(c) {
            continue;
        }
        let mut ok = true;
        for i in 0..crystal.epsilon[k].len() {
            if let Some(p) = crystal.e[k][i] {
                ok &= binf.e_tilde(c, i)?.as_ref() == st.image[p].as_ref();
            }
            if let Some(p) = crystal.e_star[k][i] {
                ok &= binf.e_star(c, i)?.as_ref() == st.image[p].as_ref();
            }
        }
        if !ok {
            continue;
        }
        st.image[k] = Some(c.clone());
        st.used.insert(c.clone(), k);
        match_rec(crystal, binf, candidates, order, depth + 1, st)?;
        st.used.remove(c);
        st.image[k] = None;
    }
    Ok(())
}

/// Which perfectness conditions the uniqueness search imposes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sides {
    Both,
    LeftOnly,
}

/// Solution space for one crystal element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementSolution {
    pub element: crate::crystal::BinfElement,
    pub weight: RootVector,
    /// Dimension of the affine solution space (0 means forced).
    pub freedom: usize,
    /// The particular solution used downstream (`None` if inconsistent).
    pub poly: Option<MultiPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniquenessOutcome {
    pub solutions: Vec<ElementSolution>,
}

impl UniquenessOutcome {
    /// Every element forced and consistent.
    pub fn unique(&self) -> bool {
        self.solutions.iter().all(|s| s.freedom == 0 && s.poly.is_some())
    }

    pub fn consistent(&self) -> bool {
        self.solutions.iter().all(|s| s.poly.is_some())
    }

    /// Weights where some element is not forced.
    pub fn free_weights(&self) -> Vec<RootVector> {
        let mut w: Vec<RootVector> = self.solutions.iter().filter(|s| s.freedom > 0).map(|s| s.weight.clone()).collect();
        w.dedup();
        w
    }

    pub fn polys(&self) -> Vec<MultiPoly> {
        self.solutions.iter().filter_map(|s| s.poly.clone()).collect()
    }
}

/// Solve for every biperfect family of SL_n up to the given height.
///
/// Each element c of B(∞) gets an unknown polynomial b_c of weight ν(c).
/// The perfect axiom for e_i with ε = ε_i(c) reads
/// `e_i^ε b_c = ε e_i^{ε−1} b_{ẽ_i c}` (and `e_i b_c = 0` when ε = 0),
/// which is affine-linear in b_c once lower weights are known; the right
/// action gives the same with ε*, ẽ_i*. The scalars are fixed by these
/// inhomogeneous equations, so the only normalization is `b_0 = 1`.
pub fn uniqueness_search(ring: &CoordRing, max_height: i64, sides: Sides) -> Result<UniquenessOutcome> {
    let binf = crate::crystal::Binf::new(ring.cartan())?;
    let r = ring.rank();
    let mut solved: HashMap<crate::crystal::BinfElement, MultiPoly> = HashMap::new();
    let mut solutions = Vec::new();
    let mut weights: Vec<RootVector> = Vec::new();
    for h in 0..=max_height {
        weights.extend(box_weights(r, h).into_iter().filter(|w| w.height() == h));
    }
    for nu in weights {
        let mons = ring.monomials(&nu);
        let d = mons.len();
        let basis_polys: Vec<MultiPoly> =
            mons.iter().map(|m| MultiPoly::monomial(ring.nvars(), m.clone(), rat(1))).collect();
        for c in binf.elements_of_weight(&nu) {
            if nu.is_zero() {
                solved.insert(c.clone(), ring.one());
                solutions.push(ElementSolution { element: c, weight: nu.clone(), freedom: 0, poly: Some(ring.one()) });
                continue;
            }
            let mut rows: Matrix<Rational> = Vec::new();
            let mut rhs: Vec<Rational> = Vec::new();
            let mut consistent = true;
            let side_list: &[Side] = match sides {
                Sides::Both => &[Side::Left, Side::Right],
                Sides::LeftOnly => &[Side::Left],
            };
            for &side in side_list {
                for i in 0..r {
                    let (eps, partner) = match side {
                        Side::Left => (binf.epsilon(&c, i)?, binf.e_tilde(&c, i)?),
                        Side::Right => (binf.epsilon_star(&c, i)?, binf.e_star(&c, i)?),
                    };
                    let power = eps.max(1);
                    let target = nu.sub(&ring.cartan().simple_root(i).scale(power as i64));
                    if !target.is_nonnegative() {
                        continue;
                    }
                    let tmons = ring.monomials(&target);
                    let images: Vec<Vec<Rational>> = basis_polys
                        .iter()
                        .map(|m| ring.coordinates(&ring.e_power(side, i, power, m), &tmons))
                        .collect::<Result<_>>()?;
                    let want = match (eps, partner) {
                        (0, _) => vec![Rational::zero(); tmons.len()],
                        (e, Some(p)) => match solved.get(&p) {
                            Some(bp) => {
                                let img = ring.e_power(side, i, e - 1, bp).scale(&rat(e as i64));
                                ring.coordinates(&img, &tmons)?
                            }
                            None => {
                                consistent = false;
                                vec![Rational::zero(); tmons.len()]
                            }
                        },
                        (_, None) => return Err(Error::Inconsistent("ε > 0 without partner".into())),
                    };
                    for row in 0..tmons.len() {
                        rows.push(images.iter().map(|col| col[row].clone()).collect());
                        rhs.push(want[row].clone());
                    }
                }
            }
            let sol = if consistent { linalg::solve(&Q, &rows, &rhs, d) } else { None };
            match sol {
                Some((x, ker)) => {
                    let poly = MultiPoly::from_terms(ring.nvars(), mons.iter().cloned().zip(x));
                    solved.insert(c.clone(), poly.clone());
                    solutions.push(ElementSolution { element: c, weight: nu.clone(), freedom: ker.len(), poly: Some(poly) });
                }
                None => solutions.push(ElementSolution { element: c, weight: nu.clone(), freedom: 0, poly: None }),
            }
        }
    }
    Ok(UniquenessOutcome { solutions })
}

/// Elements of the family with ε_i*(b) ≤ ⟨α_i^∨, λ⟩, checked to span
/// `∩_i ker (e_i^*)^{⟨α_i^∨,λ⟩+1}` on every graded piece in the box.
pub fn psi_image_basis(
    family: &BasisFamily,
    report: &BiperfectReport,
    lambda: &crate::rootdata::Weight,
) -> Result<Vec<usize>> {
    let ring = &family.ring;
    if lambda.rank() != ring.rank() || !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.0.clone()));
    }
    let chosen: Vec<usize> = (0..family.len())
        .filter(|&k| report.epsilon_star[k].iter().zip(&lambda.0).all(|(&e, &l)| e as i64 <= l))
        .collect();
    for nu in box_weights(ring.rank(), family.bound) {
        let mons = ring.monomials(&nu);
        // stacked map f ↦ ((e_i^*)^{λ_i+1} f)_i on the graded piece
        let mut rows: Matrix<Rational> = Vec::new();
        for (i, &l) in lambda.0.iter().enumerate() {
            let p = l as u64 + 1;
            let target = nu.sub(&ring.cartan().simple_root(i).scale(p as i64));
            if !target.is_nonnegative() {
                continue;
            }
            let tmons = ring.monomials(&target);
            let cols: Vec<Vec<Rational>> = mons
                .iter()
                .map(|m| {
                    let mono = MultiPoly::monomial(ring.nvars(), m.clone(), rat(1));
                    ring.coordinates(&ring.e_power(Side::Right, i, p, &mono), &tmons)
                })
                .collect::<Result<_>>()?;
            for row in 0..tmons.len() {
                rows.push(cols.iter().map(|c| c[row].clone()).collect());
            }
        }
        let kernel_dim = mons.len() - linalg::rank(&Q, &rows, mons.len());
        let here: Vec<usize> = chosen.iter().copied().filter(|&k| family.elements[k].weight == nu).collect();
        if here.len() != kernel_dim {
            return Err(Error::Verification(format!(
                "weight {nu}: {} chosen elements, kernel dimension {kernel_dim}",
                here.len()
            )));
        }
    }
    Ok(chosen)
}
