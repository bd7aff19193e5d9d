//! Modules over the preprojective algebra Λ of a simply-laced quiver:
//! relation checks, submodule lattices, Harder–Narasimhan polytopes,
//! Euler characteristics of composition-series varieties (by point
//! counting over F_p and interpolation at q = 1), the functions ξ_M on N,
//! and lattice distributions of Grassmannians of `M[t]/t^n`.
//!
//! Vertices are 0-based internally and 1-based in the JSON format. The
//! doubled quiver has one arrow `i → j` for every ordered pair of adjacent
//! vertices; its sign is `τ(i → j) = +1` when `i < j` and `−1` otherwise.
//! A composition series type `(i_1, …, i_p)` lists factors from the bottom:
//! `M^k / M^{k−1} ≅ S_{i_k}`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coordring::CoordRing;
use crate::field::{primes, Field, PrimeField, Rationals};
use crate::linalg::{self, Matrix};
use crate::polytope::{hull, LatticePolytope};
use crate::rootdata::{CartanData, RootVector};
use crate::crystal::{Binf, BinfElement};
use crate::symbolic::MultiPoly;
use crate::{rat, Error, Rational, Result};

pub const MODULE_SCHEMA: &str = "biperfect.ppmodule.v1";
/// Largest total dimension accepted by the point-counting routines.
pub const MAX_COUNT_DIM: usize = 6;
/// Number of primes beyond the interpolation degree used as a check.
pub const EXTRA_PRIMES: usize = 2;

/// Sign of the doubled arrow `from → to`.
pub fn tau(from: usize, to: usize) -> i64 {
    if from < to {
        1
    } else {
        -1
    }
}

/// Doubled arrows of a simply-laced Dynkin diagram, sorted.
pub fn doubled_arrows(cartan: &CartanData) -> Result<Vec<(usize, usize)>> {
    if !cartan.is_simply_laced() {
        return Err(Error::NotSimplyLaced(cartan.name().to_string()));
    }
    let r = cartan.rank();
    Ok((0..r)
        .flat_map(|i| (0..r).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && cartan.entry(i, j) == -1)
        .collect())
}

/// Field of definition of a module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleField {
    Rationals,
    Prime(u64),
}

/// A representation of the doubled quiver, entries exact rationals (or
/// residues in `0..p` for a module over F_p). Arrows not listed are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPModule {
    cartan: CartanData,
    dims: Vec<usize>,
    arrows: BTreeMap<(usize, usize), Matrix<Rational>>,
    field: ModuleField,
}

#[derive(Serialize, Deserialize)]
struct ArrowJson {
    from: usize,
    to: usize,
    entries: Vec<serde_json::Value>,
}

#[derive(Serialize, Deserialize)]
struct ModuleJson {
    #[serde(default)]
    schema: Option<String>,
    cartan: String,
    dims: Vec<usize>,
    arrows: Vec<ArrowJson>,
    #[serde(default = "default_field")]
    field: String,
}

fn default_field() -> String {
    "Q".to_string()
}

fn parse_rational(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(rat)
            .ok_or_else(|| Error::Parse(format!("entry {n} is not an integer; write fractions as strings"))),
        serde_json::Value::String(s) => {
            let s = s.trim();
            let parsed = match s.split_once('/') {
                Some((a, b)) => a.trim().parse::<num_bigint::BigInt>().ok().zip(b.trim().parse::<num_bigint::BigInt>().ok()),
                None => s.parse::<num_bigint::BigInt>().ok().map(|a| (a, num_bigint::BigInt::one())),
            };
            match parsed {
                Some((_, d)) if d.is_zero() => Err(Error::Parse(format!("zero denominator in {s}"))),
                Some((a, d)) => Ok(Rational::new(a, d)),
                None => Err(Error::Parse(format!("bad rational {s}"))),
            }
        }
        other => Err(Error::Parse(format!("bad entry {other}"))),
    }
}

impl PPModule {
    /// Module with the given arrow matrices (`(from, to)` 0-based, matrix of
    /// shape `dims[to] × dims[from]`).
    pub fn new(
        cartan: &CartanData,
        dims: Vec<usize>,
        arrows: Vec<((usize, usize), Matrix<Rational>)>,
        field: ModuleField,
    ) -> Result<Self> {
        let allowed = doubled_arrows(cartan)?;
        if dims.len() != cartan.rank() {
            return Err(Error::DimensionMismatch { expected: cartan.rank(), got: dims.len() });
        }
        if let ModuleField::Prime(p) = field {
            if !crate::field::is_prime(p) {
                return Err(Error::Parse(format!("F{p}: {p} is not prime")));
            }
        }
        let mut map = BTreeMap::new();
        for ((from, to), m) in arrows {
            if !allowed.contains(&(from, to)) {
                return Err(Error::Parse(format!("no arrow {} -> {} in the doubled quiver", from + 1, to + 1)));
            }
            if m.len() != dims[to] {
                return Err(Error::DimensionMismatch { expected: dims[to], got: m.len() });
            }
            for row in &m {
                if row.len() != dims[from] {
                    return Err(Error::DimensionMismatch { expected: dims[from], got: row.len() });
                }
            }
            let m = match field {
                ModuleField::Rationals => m,
                ModuleField::Prime(p) => {
                    let f = PrimeField::new(p);
                    m.iter()
                        .map(|row| row.iter().map(|x| f.reduce(x).map(|r| rat(r as i64))).collect::<Result<Vec<_>>>())
                        .collect::<Result<Matrix<Rational>>>()?
                }
            };
            map.insert((from, to), m);
        }
        Ok(PPModule { cartan: cartan.clone(), dims, arrows: map, field })
    }

    /// The zero module.
    pub fn zero(cartan: &CartanData) -> Result<Self> {
        Self::new(cartan, vec![0; cartan.rank()], vec![], ModuleField::Rationals)
    }

    /// The simple module `S_i`.
    pub fn simple(cartan: &CartanData, i: usize) -> Result<Self> {
        let mut dims = vec![0; cartan.rank()];
        dims[i] = 1;
        Self::new(cartan, dims, vec![], ModuleField::Rationals)
    }

    /// Arrow-free module with dimension vector `dims`.
    pub fn semisimple(cartan: &CartanData, dims: Vec<usize>) -> Result<Self> {
        Self::new(cartan, dims, vec![], ModuleField::Rationals)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: ModuleJson = serde_json::from_str(text)?;
        let cartan = CartanData::parse(&j.cartan)?;
        let field = match j.field.trim() {
            "Q" | "q" | "QQ" => ModuleField::Rationals,
            other => {
                let digits = other.trim_start_matches(['F', 'f']);
                ModuleField::Prime(digits.parse().map_err(|_| Error::Parse(format!("unknown field {other}")))?)
            }
        };
        let mut arrows = Vec::new();
        for a in &j.arrows {
            if a.from == 0 || a.to == 0 || a.from > j.dims.len() || a.to > j.dims.len() {
                return Err(Error::Parse(format!("arrow {} -> {} out of range", a.from, a.to)));
            }
            let (from, to) = (a.from - 1, a.to - 1);
            let (rows, cols) = (j.dims[to], j.dims[from]);
            if a.entries.len() != rows * cols {
                return Err(Error::DimensionMismatch { expected: rows * cols, got: a.entries.len() });
            }
            let vals = a.entries.iter().map(parse_rational).collect::<Result<Vec<_>>>()?;
            let m: Matrix<Rational> = (0..rows).map(|r| vals[r * cols..(r + 1) * cols].to_vec()).collect();
            arrows.push(((from, to), m));
        }
        Self::new(&cartan, j.dims, arrows, field)
    }

    pub fn to_json(&self) -> String {
        let arrows = self
            .arrows
            .iter()
            .map(|(&(from, to), m)| ArrowJson {
                from: from + 1,
                to: to + 1,
                entries: m.iter().flatten().map(|x| serde_json::Value::String(x.to_string())).collect(),
            })
            .collect();
        let j = ModuleJson {
            schema: Some(MODULE_SCHEMA.to_string()),
            cartan: self.cartan.name().to_string(),
            dims: self.dims.clone(),
            arrows,
            field: match self.field {
                ModuleField::Rationals => "Q".to_string(),
                ModuleField::Prime(p) => format!("F{p}"),
            },
        };
        serde_json::to_string_pretty(&j).expect("serializable")
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn field(&self) -> ModuleField {
        self.field
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Dimension vector as an element of the root lattice.
    pub fn dim_vector(&self) -> RootVector {
        RootVector(self.dims.iter().map(|&d| d as i64).collect())
    }

    /// Matrix of `from → to` (zero when absent).
    pub fn arrow(&self, from: usize, to: usize) -> Matrix<Rational> {
        self.arrows
            .get(&(from, to))
            .cloned()
            .unwrap_or_else(|| vec![vec![Rational::zero(); self.dims[from]]; self.dims[to]])
    }

    /// Nonzero arrows.
    pub fn arrows(&self) -> impl Iterator<Item = (&(usize, usize), &Matrix<Rational>)> {
        self.arrows.iter().filter(|(_, m)| m.iter().flatten().any(|x| !x.is_zero()))
    }

    pub fn is_arrow_free(&self) -> bool {
        self.arrows().next().is_none()
    }

    fn arith_mul(&self, a: &Matrix<Rational>, b: &Matrix<Rational>, inner: usize, cols: usize) -> Matrix<Rational> {
        let m = linalg::mat_mul(&Rationals, a, b, inner, cols);
        match self.field {
            ModuleField::Rationals => m,
            ModuleField::Prime(p) => {
                let f = PrimeField::new(p);
                m.iter().map(|row| row.iter().map(|x| rat(f.reduce(x).unwrap() as i64)).collect()).collect()
            }
        }
    }

    /// `Σ_j τ(j → i) M_{j→i} M_{i→j}` at every vertex `i`.
    pub fn relation_defects(&self) -> Vec<Matrix<Rational>> {
        let arrows = doubled_arrows(&self.cartan).expect("validated at construction");
        (0..self.dims.len())
            .map(|i| {
                let d = self.dims[i];
                let mut acc = vec![vec![Rational::zero(); d]; d];
                for &(j, _) in arrows.iter().filter(|&&(_, t)| t == i) {
                    let prod = self.arith_mul(&self.arrow(j, i), &self.arrow(i, j), self.dims[j], d);
                    let s = rat(tau(j, i));
                    for r in 0..d {
                        for c in 0..d {
                            acc[r][c] += &s * &prod[r][c];
                        }
                    }
                }
                if let ModuleField::Prime(p) = self.field {
                    let f = PrimeField::new(p);
                    for x in acc.iter_mut().flatten() {
                        *x = rat(f.reduce(x).unwrap() as i64);
                    }
                }
                acc
            })
            .collect()
    }

    /// Exact check of the preprojective relation at every vertex.
    pub fn check_relation(&self) -> bool {
        self.relation_defects().iter().flatten().flatten().all(Zero::is_zero)
    }

    /// Error unless the relation holds.
    pub fn require_relation(&self) -> Result<()> {
        for (i, d) in self.relation_defects().iter().enumerate() {
            if d.iter().flatten().any(|x| !x.is_zero()) {
                return Err(Error::RelationFails(format!("vertex {}", i + 1)));
            }
        }
        Ok(())
    }

    fn rank_of(&self, m: &Matrix<Rational>, ncols: usize) -> usize {
        match self.field {
            ModuleField::Rationals => linalg::rank(&Rationals, m, ncols),
            ModuleField::Prime(p) => {
                let f = PrimeField::new(p);
                let mm: Matrix<u64> = m.iter().map(|r| r.iter().map(|x| f.reduce(x).unwrap()).collect()).collect();
                linalg::rank(&f, &mm, ncols)
            }
        }
    }

    /// `ε_i = dim Hom(M, S_i)`: the dimension of `M_i` modulo the images
    /// of all arrows into `i`.
    pub fn epsilon(&self) -> Vec<u64> {
        (0..self.dims.len())
            .map(|i| {
                let d = self.dims[i];
                // columns = incoming images; rank of the block row [M_{j→i}]
                let mut rows: Matrix<Rational> = vec![Vec::new(); d];
                for (&(_, to), m) in &self.arrows {
                    if to == i {
                        for (r, row) in m.iter().enumerate() {
                            rows[r].extend(row.iter().cloned());
                        }
                    }
                }
                let cols = rows.first().map_or(0, Vec::len);
                (d - if cols == 0 { 0 } else { self.rank_of(&rows, cols) }) as u64
            })
            .collect()
    }

    /// `ε*_i = dim Hom(S_i, M)`: the joint kernel of all arrows out of `i`.
    pub fn epsilon_star(&self) -> Vec<u64> {
        (0..self.dims.len())
            .map(|i| {
                let d = self.dims[i];
                let mut stacked: Matrix<Rational> = Vec::new();
                for (&(from, _), m) in &self.arrows {
                    if from == i {
                        stacked.extend(m.iter().cloned());
                    }
                }
                (d - if stacked.is_empty() { 0 } else { self.rank_of(&stacked, d) }) as u64
            })
            .collect()
    }

    /// Replace every nonzero arrow entry by a fresh value from `values`,
    /// keeping the zero pattern.
    pub fn pattern_perturbation(&self, mut values: impl FnMut() -> Rational) -> PPModule {
        let mut out = self.clone();
        for m in out.arrows.values_mut() {
            for x in m.iter_mut().flatten() {
                if !x.is_zero() {
                    *x = values();
                }
            }
        }
        out
    }
}

/// A representation of a quiver with loops over an exact field: vertex
/// dimensions and linear maps `(from, to, matrix)`. Used for Λ-modules and
/// for the Λ[t]/t^n-modules `M[t]/t^n`, where `t` acts by loops.
#[derive(Clone, Debug)]
pub struct Rep<F: Field> {
    pub field: F,
    pub dims: Vec<usize>,
    pub maps: Vec<(usize, usize, Matrix<F::Elem>)>,
}

/// Per-vertex subspaces, each stored as the nonzero rows of its RREF.
pub type GradedSubspace<E> = Vec<Vec<Vec<E>>>;

fn row_reduce<F: Field>(f: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut m = rows.to_vec();
    let r = linalg::rref(f, &mut m, ncols).len();
    m.truncate(r);
    m
}

fn in_span<F: Field>(f: &F, basis: &[Vec<F::Elem>], v: &[F::Elem], ncols: usize) -> bool {
    if v.iter().all(|x| f.is_zero(x)) {
        return true;
    }
    let mut rows = basis.to_vec();
    rows.push(v.to_vec());
    linalg::rank(f, &rows, ncols) == basis.len()
}

impl<F: Field> Rep<F>
where
    F::Elem: std::hash::Hash + Eq,
{
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    fn is_stable(&self, u: &GradedSubspace<F::Elem>, chosen: usize) -> bool {
        let f = &self.field;
        self.maps.iter().filter(|(a, b, _)| *a < chosen && *b < chosen).all(|(a, b, m)| {
            u[*a].iter().all(|v| in_span(f, &u[*b], &linalg::mat_vec(f, m, v), self.dims[*b]))
        })
    }

    /// `{v ∈ V_i : g(v) ∈ U_j for every map g : i → j}`.
    fn extension_space(&self, u: &GradedSubspace<F::Elem>, i: usize) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let d = self.dims[i];
        let mut constraints: Matrix<F::Elem> = Vec::new();
        for (a, b, m) in &self.maps {
            if *a != i {
                continue;
            }
            // annihilator of U_b, pulled back along m
            for w in linalg::kernel(f, &u[*b], self.dims[*b]) {
                let row: Vec<F::Elem> = (0..d)
                    .map(|c| (0..self.dims[*b]).fold(f.zero(), |acc, r| f.add(&acc, &f.mul(&w[r], &m[r][c]))))
                    .collect();
                constraints.push(row);
            }
        }
        if constraints.is_empty() {
            return linalg::identity(f, d);
        }
        linalg::kernel(f, &constraints, d)
    }

    /// Vectors of `space` completing `basis` (an RREF) to a basis of
    /// `basis + space`.
    fn complement(&self, basis: &[Vec<F::Elem>], space: &[Vec<F::Elem>], d: usize) -> Vec<Vec<F::Elem>> {
        let mut acc = basis.to_vec();
        let mut out = Vec::new();
        for v in space {
            if !in_span(&self.field, &acc, v, d) {
                acc.push(v.clone());
                out.push(v.clone());
            }
        }
        out
    }

    fn zero_subspace(&self) -> GradedSubspace<F::Elem> {
        vec![Vec::new(); self.dims.len()]
    }

    fn extend(&self, u: &GradedSubspace<F::Elem>, i: usize, v: Vec<F::Elem>) -> GradedSubspace<F::Elem> {
        let mut n = u.clone();
        let mut rows = n[i].clone();
        rows.push(v);
        n[i] = row_reduce(&self.field, &rows, self.dims[i]);
        n
    }
}

/// Subspaces of F_p^m as RREF row lists.
pub fn all_subspaces(f: &PrimeField, m: usize) -> Vec<Vec<Vec<u64>>> {
    let p = f.modulus();
    let mut out = Vec::new();
    for r in 0..=m {
        for pivots in combinations(m, r) {
            let free: Vec<(usize, usize)> = (0..r)
                .flat_map(|k| ((pivots[k] + 1)..m).filter(|c| !pivots.contains(c)).map(move |c| (k, c)))
                .collect();
            let total = p.checked_pow(free.len() as u32).expect("subspace count overflow");
            for code in 0..total {
                let mut rows = vec![vec![0u64; m]; r];
                for (k, &pc) in pivots.iter().enumerate() {
                    rows[k][pc] = 1;
                }
                let mut c = code;
                for &(k, col) in &free {
                    rows[k][col] = c % p;
                    c /= p;
                }
                out.push(rows);
            }
        }
    }
    out
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for k in start..n {
            cur.push(k);
            rec(k + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// Representatives of the points of `P^{m−1}(F_p)`.
fn projective_points(p: u64, m: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for lead in 0..m {
        let rest = m - lead - 1;
        for code in 0..p.pow(rest as u32) {
            let mut v = vec![0u64; m];
            v[lead] = 1;
            let mut c = code;
            for x in v.iter_mut().skip(lead + 1) {
                *x = c % p;
                c /= p;
            }
            out.push(v);
        }
    }
    out
}

impl Rep<PrimeField> {
    /// All subrepresentations.
    pub fn submodules(&self) -> Vec<GradedSubspace<u64>> {
        let f = &self.field;
        let per_vertex: Vec<Vec<Vec<Vec<u64>>>> = (0..self.dims.len())
            .map(|i| {
                all_subspaces(f, self.dims[i])
                    .into_iter()
                    .filter(|s| {
                        self.maps.iter().filter(|(a, b, _)| *a == i && *b == i).all(|(_, _, m)| {
                            s.iter().all(|v| in_span(f, s, &linalg::mat_vec(f, m, v), self.dims[i]))
                        })
                    })
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        let mut cur = self.zero_subspace();
        self.submodules_rec(0, &per_vertex, &mut cur, &mut out);
        out
    }

    fn submodules_rec(
        &self,
        i: usize,
        per_vertex: &[Vec<Vec<Vec<u64>>>],
        cur: &mut GradedSubspace<u64>,
        out: &mut Vec<GradedSubspace<u64>>,
    ) {
        if i == self.dims.len() {
            out.push(cur.clone());
            return;
        }
        for s in &per_vertex[i] {
            cur[i] = s.clone();
            if self.is_stable(cur, i + 1) {
                self.submodules_rec(i + 1, per_vertex, cur, out);
            }
        }
        cur[i] = Vec::new();
    }

    /// Number of flags of submodules `0 = U^0 ⊂ ⋯ ⊂ U^p = V` with
    /// `U^k / U^{k−1}` one-dimensional at vertex `seq[k−1]`.
    pub fn count_flags(&self, seq: &[usize]) -> u128 {
        let mut memo: HashMap<GradedSubspace<u64>, u128> = HashMap::new();
        self.count_rec(&self.zero_subspace(), seq, &mut memo)
    }

    fn count_rec(&self, u: &GradedSubspace<u64>, seq: &[usize], memo: &mut HashMap<GradedSubspace<u64>, u128>) -> u128 {
        let k: usize = u.iter().map(Vec::len).sum();
        if k == seq.len() {
            return 1;
        }
        if let Some(&c) = memo.get(u) {
            return c;
        }
        let i = seq[k];
        let d = self.dims[i];
        let space = self.extension_space(u, i);
        let comp = self.complement(&u[i], &space, d);
        let mut total = 0u128;
        for c in projective_points(self.field.modulus(), comp.len()) {
            let v: Vec<u64> = (0..d)
                .map(|r| {
                    comp.iter()
                        .zip(&c)
                        .fold(0, |acc, (b, x)| self.field.add(&acc, &self.field.mul(&b[r], x)))
                })
                .collect();
            total += self.count_rec(&self.extend(u, i, v), seq, memo);
        }
        memo.insert(u.clone(), total);
        total
    }
}

impl Rep<Rationals> {
    /// Flags of type `seq` when every step is forced: `Some(count)` with
    /// count 0 or 1, or `None` as soon as some step offers a projective
    /// space of choices (an infinite family over Q).
    pub fn forced_flags(&self, seq: &[usize]) -> Option<u64> {
        let mut u = self.zero_subspace();
        for &i in seq {
            let d = self.dims[i];
            let space = self.extension_space(&u, i);
            let comp = self.complement(&u[i], &space, d);
            match comp.len() {
                0 => return Some(0),
                1 => u = self.extend(&u, i, comp[0].clone()),
                _ => return None,
            }
        }
        Some(1)
    }
}

/// Largest total dimension for composition-series counts.
pub const MAX_FLAG_DIM: usize = 5;
/// Largest `n · dim M` for Grassmannians of `M[t]/t^n`.
pub const MAX_GRASSMANNIAN_DIM: usize = 6;

/// `[d]_q! = Π_{k=1}^d (1 + q + ⋯ + q^{k−1})`.
pub fn q_factorial(q: u64, d: usize) -> u128 {
    (1..=d).map(|k| (0..k).map(|e| (q as u128).pow(e as u32)).sum::<u128>()).product()
}

/// Point counts over several F_p, their interpolating polynomial and its
/// value at `q = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub primes: Vec<u64>,
    pub counts: Vec<u128>,
    /// Ascending coefficients of the counting polynomial.
    pub polynomial: Vec<Rational>,
    pub chi: i64,
}

/// Newton interpolation through the first `degree + 1` points, checked
/// against the remaining ones; returns ascending coefficients.
pub fn interpolate(points: &[(u64, u128)], degree: usize) -> Result<Vec<Rational>> {
    if points.len() < degree + 1 {
        return Err(Error::NonPolynomialCount(format!("{} points for degree {degree}", points.len())));
    }
    let xs: Vec<Rational> = points[..=degree].iter().map(|&(q, _)| rat(q as i64)).collect();
    let mut dd: Vec<Rational> = points[..=degree].iter().map(|&(_, c)| Rational::from_integer(c.into())).collect();
    for level in 1..=degree {
        for k in (level..=degree).rev() {
            dd[k] = (&dd[k] - &dd[k - 1]) / (&xs[k] - &xs[k - level]);
        }
    }
    // expand Σ dd[k] Π_{l<k} (q − x_l)
    let mut coeffs = vec![Rational::zero(); degree + 1];
    for k in (0..=degree).rev() {
        // coeffs = coeffs · (q − x_k) + dd[k]
        let mut next = vec![Rational::zero(); degree + 1];
        for (e, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if e + 1 <= degree {
                next[e + 1] += c;
            }
            next[e] -= c * &xs[k];
        }
        next[0] += &dd[k];
        coeffs = next;
    }
    for &(q, c) in &points[degree + 1..] {
        let v = coeffs.iter().rev().fold(Rational::zero(), |acc, a| acc * rat(q as i64) + a);
        if v != Rational::from_integer(c.into()) {
            return Err(Error::NonPolynomialCount(format!(
                "count {c} over F_{q} disagrees with the interpolated value {v}"
            )));
        }
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    Ok(coeffs)
}

fn value_at_one(coeffs: &[Rational]) -> Result<i64> {
    let v: Rational = coeffs.iter().sum();
    crate::field::rational_to_i64(&v)
        .ok_or_else(|| Error::NonPolynomialCount(format!("value at q = 1 is {v}, not an integer")))
}

/// Distribution `μ ↦ χ(G_μ(M[t]/t^n))` on the root lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeDist {
    pub n: usize,
    pub values: BTreeMap<RootVector, i64>,
}

impl LatticeDist {
    /// `n^{−exponent} Σ_μ χ_μ ⟨μ/n, v⟩^k`.
    pub fn scaled_moment(&self, k: u32, v: &[Rational], exponent: u32) -> Rational {
        let n = rat(self.n as i64);
        let mut acc = Rational::zero();
        for (mu, c) in &self.values {
            let pos: Rational = mu.0.iter().zip(v).map(|(&m, x)| rat(m) * x).sum::<Rational>() / &n;
            acc += rat(*c) * num_traits::pow(pos, k as usize);
        }
        acc / num_traits::pow(n, exponent as usize)
    }
}

impl PPModule {
    fn nonzero_entries(&self) -> impl Iterator<Item = &Rational> {
        self.arrows.values().flatten().flatten().filter(|x| !x.is_zero())
    }

    /// Primes at which every nonzero entry stays a unit, in increasing
    /// order, after skipping `skip` of them.
    pub fn good_primes(&self, count: usize, skip: usize) -> Result<Vec<u64>> {
        if let ModuleField::Prime(p) = self.field {
            return Err(Error::NonPolynomialCount(format!(
                "module is defined over F{p}; counts over a single field cannot be interpolated"
            )));
        }
        let mut out = Vec::new();
        let mut seen = 0;
        for p in primes(10_000) {
            let big = num_bigint::BigInt::from(p);
            let good = self
                .nonzero_entries()
                .all(|x| !(x.numer() % &big).is_zero() && !(x.denom() % &big).is_zero());
            if good {
                seen += 1;
                if seen > skip {
                    out.push(p);
                    if out.len() == count {
                        return Ok(out);
                    }
                }
            }
        }
        Err(Error::NonPolynomialCount("ran out of good primes".to_string()))
    }

    /// Reduction modulo `p`.
    pub fn over_prime(&self, p: u64) -> Result<Rep<PrimeField>> {
        let f = PrimeField::new(p);
        if let ModuleField::Prime(q) = self.field {
            if q != p {
                return Err(Error::Parse(format!("module over F{q} cannot be read over F{p}")));
            }
        }
        let maps = self
            .arrows()
            .map(|(&(a, b), m)| {
                let mm = m.iter().map(|row| row.iter().map(|x| f.reduce(x)).collect::<Result<Vec<_>>>());
                Ok((a, b, mm.collect::<Result<Matrix<u64>>>()?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Rep { field: f, dims: self.dims.clone(), maps })
    }

    pub fn over_rationals(&self) -> Result<Rep<Rationals>> {
        if let ModuleField::Prime(p) = self.field {
            return Err(Error::Parse(format!("module is defined over F{p}")));
        }
        let maps = self.arrows().map(|(&(a, b), m)| (a, b, m.clone())).collect();
        Ok(Rep { field: Rationals, dims: self.dims.clone(), maps })
    }

    /// `M[t]/t^n = M ⊗ k[t]/t^n` over F_p, basis `(a, k) ↦ a·n + k`, with `t`
    /// acting by loops.
    pub fn truncated_over_prime(&self, n: usize, p: u64) -> Result<Rep<PrimeField>> {
        let base = self.over_prime(p)?;
        let dims: Vec<usize> = base.dims.iter().map(|d| d * n).collect();
        let mut maps = Vec::new();
        for (a, b, m) in &base.maps {
            let mut big = vec![vec![0u64; dims[*a]]; dims[*b]];
            for (r, row) in m.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    for k in 0..n {
                        big[r * n + k][c * n + k] = *x;
                    }
                }
            }
            maps.push((*a, *b, big));
        }
        for (i, &d) in base.dims.iter().enumerate() {
            let mut t = vec![vec![0u64; d * n]; d * n];
            for a in 0..d {
                for k in 0..n.saturating_sub(1) {
                    t[a * n + k + 1][a * n + k] = 1;
                }
            }
            maps.push((i, i, t));
        }
        Ok(Rep { field: base.field, dims, maps })
    }

    fn check_sequence(&self, seq: &[usize]) -> Result<()> {
        let mut counts = vec![0usize; self.dims.len()];
        for &i in seq {
            if i >= counts.len() {
                return Err(Error::IndexOutOfRange { index: i, rank: counts.len() });
            }
            counts[i] += 1;
        }
        if counts != self.dims {
            return Err(Error::Parse(format!(
                "sequence weight {:?} differs from the dimension vector {:?}",
                counts, self.dims
            )));
        }
        Ok(())
    }

    /// Number of flags of type `seq` over F_p.
    pub fn count_flags(&self, seq: &[usize], p: u64) -> Result<u128> {
        self.check_sequence(seq)?;
        if self.is_arrow_free() {
            return Ok(self.dims.iter().map(|&d| q_factorial(p, d)).product());
        }
        Ok(self.over_prime(p)?.count_flags(seq))
    }

    /// Degree bound for flag counts: the dimension of the product of the
    /// complete flag varieties of the vertex spaces.
    pub fn flag_degree_bound(&self) -> usize {
        self.dims.iter().map(|d| d * d.saturating_sub(1) / 2).sum()
    }

    /// χ of the variety of composition series of type `seq`, with the
    /// counts behind it; `skip` good primes are passed over first.
    pub fn chi_flag_report(&self, seq: &[usize], skip: usize) -> Result<CountReport> {
        self.check_sequence(seq)?;
        if self.total_dim() > MAX_FLAG_DIM {
            return Err(Error::RankTooLarge { rank: self.total_dim(), bound: MAX_FLAG_DIM, what: "flag counting (total dimension)" });
        }
        self.require_relation()?;
        let degree = self.flag_degree_bound();
        let ps = self.good_primes(degree + 1 + EXTRA_PRIMES, skip)?;
        let counts = ps.iter().map(|&p| self.count_flags(seq, p)).collect::<Result<Vec<_>>>()?;
        let points: Vec<(u64, u128)> = ps.iter().copied().zip(counts.iter().copied()).collect();
        let polynomial = interpolate(&points, degree)?;
        let chi = value_at_one(&polynomial)?;
        Ok(CountReport { primes: ps, counts, polynomial, chi })
    }

    /// χ of the variety of composition series of type `seq`.
    pub fn chi_flag(&self, seq: &[usize]) -> Result<i64> {
        Ok(self.chi_flag_report(seq, 0)?.chi)
    }

    /// χ recomputed on a disjoint later prime set agrees.
    pub fn chi_flag_prime_independent(&self, seq: &[usize]) -> Result<bool> {
        let a = self.chi_flag_report(seq, 0)?;
        let b = self.chi_flag_report(seq, a.primes.len())?;
        Ok(a.chi == b.chi && a.polynomial == b.polynomial)
    }

    /// χ by direct enumeration of a finite flag set, without point
    /// counting: the torus-fixed flags when a coordinate torus acts with
    /// isolated fixed points, else the flag set itself when every step is
    /// forced; `None` when neither applies.
    pub fn chi_flag_direct(&self, seq: &[usize]) -> Result<Option<u64>> {
        self.check_sequence(seq)?;
        if let Some(c) = self.fixed_point_flags(seq) {
            return Ok(Some(c));
        }
        Ok(self.over_rationals()?.forced_flags(seq))
    }

    /// Basis vectors `(vertex, index)` linked by nonzero arrow entries,
    /// grouped into connected blocks.
    fn basis_blocks(&self) -> Vec<Vec<(usize, usize)>> {
        let nodes: Vec<(usize, usize)> =
            self.dims.iter().enumerate().flat_map(|(i, &d)| (0..d).map(move |k| (i, k))).collect();
        let pos: HashMap<(usize, usize), usize> = nodes.iter().enumerate().map(|(a, &v)| (v, a)).collect();
        let mut parent: Vec<usize> = (0..nodes.len()).collect();
        fn root(parent: &mut [usize], mut a: usize) -> usize {
            while parent[a] != a {
                parent[a] = parent[parent[a]];
                a = parent[a];
            }
            a
        }
        for (&(from, to), m) in self.arrows() {
            for (r, row) in m.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        let (a, b) = (root(&mut parent, pos[&(from, c)]), root(&mut parent, pos[&(to, r)]));
                        parent[a] = b;
                    }
                }
            }
        }
        let mut blocks: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for (a, &v) in nodes.iter().enumerate() {
            blocks.entry(root(&mut parent, a)).or_default().push(v);
        }
        blocks.into_values().collect()
    }

    /// Scaling each block by its own character is a torus of module
    /// automorphisms; when no block meets a vertex twice its weight spaces
    /// are the basis lines, the fixed flags are coordinate flags, and
    /// χ(F) = #F^T. `None` when some block meets a vertex twice.
    pub fn fixed_point_flags(&self, seq: &[usize]) -> Option<u64> {
        for block in self.basis_blocks() {
            let mut seen = BTreeSet::new();
            if !block.iter().all(|&(i, _)| seen.insert(i)) {
                return None;
            }
        }
        // images of each basis vector, as basis vectors
        let mut images: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
        for (&(from, to), m) in self.arrows() {
            for (r, row) in m.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        images.entry((from, c)).or_default().push((to, r));
                    }
                }
            }
        }
        fn rec(
            seq: &[usize],
            dims: &[usize],
            images: &HashMap<(usize, usize), Vec<(usize, usize)>>,
            chosen: &mut BTreeSet<(usize, usize)>,
        ) -> u64 {
            let Some((&i, rest)) = seq.split_first() else { return 1 };
            let mut total = 0;
            for k in 0..dims[i] {
                let v = (i, k);
                let stable = images.get(&v).is_none_or(|im| im.iter().all(|w| chosen.contains(w)));
                if !chosen.contains(&v) && stable {
                    chosen.insert(v);
                    total += rec(rest, dims, images, chosen);
                    chosen.remove(&v);
                }
            }
            total
        }
        Some(rec(seq, &self.dims, &images, &mut BTreeSet::new()))
    }

    /// All words with letter counts equal to the dimension vector.
    pub fn sequences(&self) -> Vec<Vec<usize>> {
        fn rec(counts: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
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
        rec(&mut self.dims.clone(), &mut Vec::new(), &mut out);
        out
    }

    /// `seq ↦ χ(F_seq(M))` over all sequences of the right weight: the
    /// pairing functional of ξ_M.
    pub fn xi_functional(&self) -> Result<BTreeMap<Vec<usize>, i64>> {
        self.sequences().into_iter().map(|s| Ok((s.clone(), self.chi_flag(&s)?))).collect()
    }

    /// ξ_M as a polynomial on the unipotent group of SL_{r+1} (type A_r),
    /// recovered from its pairings against the monomial basis.
    pub fn xi(&self) -> Result<MultiPoly> {
        let r = self.cartan.rank();
        if self.cartan != CartanData::type_a(r) {
            return Err(Error::NotSimplyLaced(format!(
                "{}: polynomial reconstruction is implemented for type A; use xi_functional",
                self.cartan.name()
            )));
        }
        let ring = CoordRing::new(r + 1)?;
        let functional = self.xi_functional()?;
        let monos = ring.monomials(&self.dim_vector());
        let seqs: Vec<&Vec<usize>> = functional.keys().collect();
        let matrix: Matrix<Rational> = seqs
            .iter()
            .map(|s| monos.iter().map(|m| ring.pairing(s, &MultiPoly::monomial(ring.nvars(), m.clone(), rat(1)))).collect())
            .collect();
        let rhs: Vec<Rational> = seqs.iter().map(|s| rat(functional[*s])).collect();
        let (sol, kernel) = linalg::solve(&Rationals, &matrix, &rhs, monos.len())
            .ok_or_else(|| Error::Inconsistent("flag Euler characteristics admit no polynomial".to_string()))?;
        if !kernel.is_empty() {
            return Err(Error::Singular(format!("pairing matrix of weight {} has a kernel", self.dim_vector())));
        }
        let mut f = MultiPoly::zero(ring.nvars());
        for (m, c) in monos.into_iter().zip(sol) {
            f.add_term(m, c);
        }
        Ok(f)
    }

    fn dimvectors_over(&self, p: u64) -> Result<BTreeSet<RootVector>> {
        Ok(self
            .over_prime(p)?
            .submodules()
            .iter()
            .map(|u| RootVector(u.iter().map(|s| s.len() as i64).collect()))
            .collect())
    }

    /// Dimension vectors of all submodules. Over Q the lattice is sampled
    /// over the two smallest good primes and must agree.
    pub fn submodule_dimvectors(&self) -> Result<BTreeSet<RootVector>> {
        if self.total_dim() > MAX_FLAG_DIM {
            return Err(Error::RankTooLarge { rank: self.total_dim(), bound: MAX_FLAG_DIM, what: "submodule enumeration (total dimension)" });
        }
        match self.field {
            ModuleField::Prime(p) => self.dimvectors_over(p),
            ModuleField::Rationals => {
                let ps = self.good_primes(2, 0)?;
                let a = self.dimvectors_over(ps[0])?;
                let b = self.dimvectors_over(ps[1])?;
                if a != b {
                    return Err(Error::FieldUnstable(format!("F{} and F{} disagree", ps[0], ps[1])));
                }
                Ok(a)
            }
        }
    }

    /// Harder–Narasimhan polytope: hull of submodule dimension vectors.
    pub fn hn_polytope(&self) -> Result<LatticePolytope> {
        let pts: Vec<RootVector> = self.submodule_dimvectors()?.into_iter().collect();
        hull(&pts)
    }

    /// The crystal element with the same weight, ε and ε*.
    pub fn match_crystal(&self, binf: &Binf) -> Result<BinfElement> {
        let (eps, eps_star) = (self.epsilon(), self.epsilon_star());
        let hits: Vec<BinfElement> = binf
            .elements_of_weight(&self.dim_vector())
            .into_iter()
            .filter(|b| binf.epsilons(b) == eps && binf.epsilon_stars(b) == eps_star)
            .collect();
        match hits.len() {
            1 => Ok(hits.into_iter().next().unwrap()),
            0 => Err(Error::Inconsistent(format!("no crystal element with ε = {eps:?}, ε* = {eps_star:?}"))),
            k => Err(Error::Ambiguous(format!("{k} crystal elements share ε = {eps:?}, ε* = {eps_star:?}"))),
        }
    }

    /// Submodule lattice, ε and ε* agree with those of `other`.
    pub fn same_generic_data(&self, other: &PPModule) -> Result<bool> {
        Ok(self.epsilon() == other.epsilon()
            && self.epsilon_star() == other.epsilon_star()
            && self.submodule_dimvectors()? == other.submodule_dimvectors()?)
    }

    /// `M ⊕ N`.
    pub fn direct_sum(&self, other: &PPModule) -> Result<PPModule> {
        if self.cartan != other.cartan || self.field != other.field {
            return Err(Error::Parse("direct sum of modules over different quivers or fields".to_string()));
        }
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let mut arrows = Vec::new();
        for &(from, to) in &doubled_arrows(&self.cartan)? {
            let (a, b) = (self.arrow(from, to), other.arrow(from, to));
            let mut m = vec![vec![Rational::zero(); dims[from]]; dims[to]];
            for (r, row) in a.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    m[r][c] = x.clone();
                }
            }
            for (r, row) in b.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    m[self.dims[to] + r][self.dims[from] + c] = x.clone();
                }
            }
            arrows.push(((from, to), m));
        }
        PPModule::new(&self.cartan, dims, arrows, self.field)
    }

    /// Degree bound for Grassmannian counts of `M[t]/t^n`.
    fn grassmannian_degree_bound(&self, n: usize) -> usize {
        self.dims.iter().map(|&d| (d * n / 2) * (d * n - d * n / 2)).sum()
    }

    /// `μ ↦ χ(G_μ(M[t]/t^n))`, the Grassmannian of Λ[t]-submodules of
    /// dimension vector μ.
    pub fn grassmannian_lattice_dist(&self, n: usize) -> Result<LatticeDist> {
        if n == 0 {
            return Err(Error::Empty("truncation order n"));
        }
        self.require_relation()?;
        if self.is_arrow_free() {
            return Ok(self.torus_lattice_dist(n));
        }
        if self.total_dim() * n > MAX_GRASSMANNIAN_DIM {
            return Err(Error::RankTooLarge { rank: self.total_dim() * n, bound: MAX_GRASSMANNIAN_DIM, what: "dim M · n" });
        }
        self.counted_lattice_dist(n)
    }

    /// Arrow-free case via torus fixed points: the coordinate torus on `M`
    /// and the grading torus on `k[t]/t^n` have isolated fixed points, the
    /// products of truncation ideals `t^{n−m} k[t]/t^n` on basis lines.
    pub fn torus_lattice_dist(&self, n: usize) -> LatticeDist {
        let mut values: BTreeMap<RootVector, i64> = BTreeMap::new();
        let lines: Vec<usize> = self.dims.iter().enumerate().flat_map(|(i, &d)| std::iter::repeat(i).take(d)).collect();
        let mut ms = vec![0usize; lines.len()];
        loop {
            let mut mu = vec![0i64; self.dims.len()];
            for (&i, &m) in lines.iter().zip(&ms) {
                mu[i] += m as i64;
            }
            *values.entry(RootVector(mu)).or_insert(0) += 1;
            let mut k = 0;
            loop {
                if k == ms.len() {
                    return LatticeDist { n, values };
                }
                ms[k] += 1;
                if ms[k] <= n {
                    break;
                }
                ms[k] = 0;
                k += 1;
            }
        }
    }

    /// General case: submodules of `M[t]/t^n` counted over several F_p and
    /// interpolated per dimension vector.
    pub fn counted_lattice_dist(&self, n: usize) -> Result<LatticeDist> {
        let degree = self.grassmannian_degree_bound(n);
        let ps = self.good_primes(degree + 1 + EXTRA_PRIMES, 0)?;
        let mut counts: BTreeMap<RootVector, Vec<(u64, u128)>> = BTreeMap::new();
        for (k, &p) in ps.iter().enumerate() {
            for u in self.truncated_over_prime(n, p)?.submodules() {
                let mu = RootVector(u.iter().map(|s| s.len() as i64).collect());
                let entry = counts.entry(mu).or_insert_with(|| ps.iter().map(|&q| (q, 0)).collect());
                entry[k].1 += 1;
            }
        }
        let mut values = BTreeMap::new();
        for (mu, pts) in counts {
            values.insert(mu, value_at_one(&interpolate(&pts, degree)?)?);
        }
        Ok(LatticeDist { n, values })
    }
}

/// Test modules: general points of the components of Λ(ν) for small ν.
pub mod fixtures {
    use super::*;

    fn a2() -> CartanData {
        CartanData::type_a(2)
    }

    /// `C ⇄ C` with only the arrow `2 → 1` nonzero: the general point of
    /// the component `b = 0` of Λ(α1 + α2) for sl3.
    pub fn sl3_component_b_zero() -> PPModule {
        PPModule::new(&a2(), vec![1, 1], vec![((1, 0), vec![vec![rat(1)]])], ModuleField::Rationals).expect("valid fixture")
    }

    /// `C ⇄ C` with only the arrow `1 → 2` nonzero: the component `a = 0`.
    pub fn sl3_component_a_zero() -> PPModule {
        PPModule::new(&a2(), vec![1, 1], vec![((0, 1), vec![vec![rat(1)]])], ModuleField::Rationals).expect("valid fixture")
    }

    /// Both arrows nonzero: violates the relation.
    pub fn sl3_both_arrows() -> PPModule {
        PPModule::new(
            &a2(),
            vec![1, 1],
            vec![((0, 1), vec![vec![rat(1)]]), ((1, 0), vec![vec![rat(1)]])],
            ModuleField::Rationals,
        )
        .expect("valid shape")
    }

    /// `k^n` for sl2.
    pub fn sl2_free(n: usize) -> PPModule {
        PPModule::semisimple(&CartanData::type_a(1), vec![n]).expect("valid fixture")
    }

    /// General points of every component of Λ(ν) for sl3 with
    /// `1 ≤ ht ν ≤ 3`, labelled.
    pub fn sl3_generic_height_le3() -> Vec<(String, PPModule)> {
        let c = a2();
        let s1 = PPModule::simple(&c, 0).unwrap();
        let s2 = PPModule::simple(&c, 1).unwrap();
        let ma = sl3_component_b_zero();
        let mb = sl3_component_a_zero();
        let ss = |d: Vec<usize>| PPModule::semisimple(&c, d).unwrap();
        vec![
            ("S1".to_string(), s1.clone()),
            ("S2".to_string(), s2.clone()),
            ("S1^2".to_string(), ss(vec![2, 0])),
            ("S2^2".to_string(), ss(vec![0, 2])),
            ("M(2->1)".to_string(), ma.clone()),
            ("M(1->2)".to_string(), mb.clone()),
            ("S1^3".to_string(), ss(vec![3, 0])),
            ("S2^3".to_string(), ss(vec![0, 3])),
            ("S1+M(2->1)".to_string(), s1.direct_sum(&ma).unwrap()),
            ("S1+M(1->2)".to_string(), s1.direct_sum(&mb).unwrap()),
            ("S2+M(2->1)".to_string(), s2.direct_sum(&ma).unwrap()),
            ("S2+M(1->2)".to_string(), s2.direct_sum(&mb).unwrap()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn relation_examples() {
        let c = CartanData::type_a(2);
        assert!(PPModule::simple(&c, 0).unwrap().check_relation());
        assert!(sl3_component_b_zero().check_relation());
        assert!(!sl3_both_arrows().check_relation());
    }

    #[test]
    fn json_round_trip() {
        let m = sl3_component_b_zero();
        let back = PPModule::from_json(&m.to_json()).unwrap();
        assert_eq!(m, back);
        let text = r#"{"cartan":"A2","dims":[1,1],"arrows":[{"from":2,"to":1,"entries":["3/2"]}],"field":"F5"}"#;
        let m = PPModule::from_json(text).unwrap();
        assert_eq!(m.arrow(1, 0), vec![vec![rat(4)]]);
        assert!(PPModule::from_json(r#"{"cartan":"A2","dims":[1,1],"arrows":[{"from":1,"to":1,"entries":[1]}]}"#).is_err());
    }

    #[test]
    fn subspace_counts_are_gaussian_binomials() {
        let f = PrimeField::new(3);
        // 1 + 13 + 13 + 1
        assert_eq!(all_subspaces(&f, 3).len(), 28);
    }

    #[test]
    fn flag_counts_and_chi() {
        let m = sl2_free(3);
        assert_eq!(m.count_flags(&[0, 0, 0], 2).unwrap(), 21);
        assert_eq!(m.chi_flag(&[0, 0, 0]).unwrap(), 6);
        // generic count agrees with the closed form
        assert_eq!(m.over_prime(3).unwrap().count_flags(&[0, 0, 0]), q_factorial(3, 3));
        let ma = sl3_component_b_zero();
        assert_eq!(ma.chi_flag(&[0, 1]).unwrap(), 1);
        assert_eq!(ma.chi_flag(&[1, 0]).unwrap(), 0);
        assert_eq!(ma.chi_flag_direct(&[0, 1]).unwrap(), Some(1));
        assert!(ma.chi_flag_prime_independent(&[0, 1]).unwrap());
    }

    #[test]
    fn xi_of_the_two_components() {
        let ring = CoordRing::new(3).unwrap();
        assert_eq!(ring.to_text(&sl3_component_b_zero().xi().unwrap()), ring.to_text(&ring.parse("x*y - z").unwrap()));
        assert_eq!(sl3_component_a_zero().xi().unwrap(), ring.parse("z").unwrap());
        let zero = PPModule::zero(&CartanData::type_a(2)).unwrap();
        assert_eq!(zero.xi().unwrap(), ring.one());
    }

    #[test]
    fn submodules_epsilons_and_hn() {
        let ma = sl3_component_b_zero();
        let dims: Vec<RootVector> = ma.submodule_dimvectors().unwrap().into_iter().collect();
        assert_eq!(dims, vec![RootVector(vec![0, 0]), RootVector(vec![1, 0]), RootVector(vec![1, 1])]);
        assert_eq!(ma.epsilon(), vec![0, 1]);
        assert_eq!(ma.epsilon_star(), vec![1, 0]);
        assert_eq!(ma.hn_polytope().unwrap().vertices().len(), 3);
    }

    #[test]
    fn lattice_dist_paths_agree() {
        let m = sl2_free(1);
        for n in 1..=3 {
            let d = m.grassmannian_lattice_dist(n).unwrap();
            assert_eq!(d, m.counted_lattice_dist(n).unwrap());
            assert!(d.values.values().all(|&c| c == 1));
        }
        let m2 = sl2_free(2);
        assert_eq!(m2.torus_lattice_dist(2), m2.counted_lattice_dist(2).unwrap());
        // n = 1 recovers the submodule lattice with χ-weights
        let ma = sl3_component_b_zero();
        let d = ma.grassmannian_lattice_dist(1).unwrap();
        let keys: BTreeSet<RootVector> = d.values.keys().cloned().collect();
        assert_eq!(keys, ma.submodule_dimvectors().unwrap());
        let d3 = ma.grassmannian_lattice_dist(3).unwrap();
        assert_eq!(d3.values.values().sum::<i64>(), 10);
    }
}
