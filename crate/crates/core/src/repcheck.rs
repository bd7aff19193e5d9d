//! Explicit finite-dimensional representations of sl_n over Q, weight
//! spaces, kernel filtrations of the Chevalley generators, and the perfect
//! basis axiom.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::field::Rationals;
use crate::linalg::{self, Matrix};
use crate::rootdata::{CartanData, Weight};
use crate::{rat, Error, Rational, Result};

const Q: Rationals = Rationals;

/// Largest dimension of an ambient tensor product used to build irreps.
pub const MAX_AMBIENT_DIM: usize = 729;

/// Representation of the Lie algebra of a Cartan datum on `Q^dim`, given
/// by the matrices of its Chevalley generators in a weight basis.
#[derive(Clone, Debug, PartialEq)]
pub struct ExplicitRep {
    cartan: CartanData,
    dim: usize,
    e: Vec<Matrix<Rational>>,
    f: Vec<Matrix<Rational>>,
    h: Vec<Matrix<Rational>>,
    weights: Vec<Weight>,
}

fn zero_matrix(n: usize) -> Matrix<Rational> {
    linalg::zeros(&Q, n, n)
}

fn mat_mul(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<Rational> {
    let n = b.len();
    let cols = b.first().map_or(0, Vec::len);
    linalg::mat_mul(&Q, a, b, n, cols)
}

fn mat_sub(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<Rational> {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

fn mat_scale(a: &Matrix<Rational>, c: &Rational) -> Matrix<Rational> {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

fn commutator(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<Rational> {
    mat_sub(&mat_mul(a, b), &mat_mul(b, a))
}

fn mat_pow_vec(m: &Matrix<Rational>, v: &[Rational], k: u64) -> Vec<Rational> {
    let mut out = v.to_vec();
    for _ in 0..k {
        out = linalg::mat_vec(&Q, m, &out);
    }
    out
}

fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Largest `n` with `m^n v ≠ 0` (0 for `v = 0`).
pub fn nilpotency(m: &Matrix<Rational>, v: &[Rational]) -> u64 {
    let mut cur = v.to_vec();
    let mut n = 0;
    loop {
        cur = linalg::mat_vec(&Q, m, &cur);
        if is_zero_vec(&cur) {
            return n;
        }
        n += 1;
        assert!(n as usize <= v.len() + 1, "operator is not nilpotent");
    }
}

impl ExplicitRep {
    /// Build from generator matrices whose Cartan parts are diagonal.
    pub fn new(
        cartan: &CartanData,
        e: Vec<Matrix<Rational>>,
        f: Vec<Matrix<Rational>>,
        h: Vec<Matrix<Rational>>,
    ) -> Result<Self> {
        let r = cartan.rank();
        if e.len() != r || f.len() != r || h.len() != r {
            return Err(Error::DimensionMismatch { expected: r, got: e.len().min(f.len()).min(h.len()) });
        }
        let dim = h[0].len();
        let mut weights = Vec::with_capacity(dim);
        for k in 0..dim {
            let mut w = Vec::with_capacity(r);
            for hi in &h {
                for (j, x) in hi[k].iter().enumerate() {
                    if j != k && !x.is_zero() {
                        return Err(Error::NotWeightBasis(format!("h is not diagonal at basis vector {k}")));
                    }
                }
                let d = &hi[k][k];
                if !d.is_integer() {
                    return Err(Error::NotWeightBasis(format!("non-integral weight at basis vector {k}")));
                }
                w.push(crate::field::rational_to_i64(d).expect("small weights"));
            }
            weights.push(Weight(w));
        }
        Ok(ExplicitRep { cartan: cartan.clone(), dim, e, f, h, weights })
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn e(&self, i: usize) -> &Matrix<Rational> {
        &self.e[i]
    }

    pub fn f(&self, i: usize) -> &Matrix<Rational> {
        &self.f[i]
    }

    pub fn h(&self, i: usize) -> &Matrix<Rational> {
        &self.h[i]
    }

    /// Weight of each basis vector.
    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    /// Indices of basis vectors of weight `mu`.
    pub fn weight_space(&self, mu: &Weight) -> Vec<usize> {
        (0..self.dim).filter(|&k| self.weights[k] == *mu).collect()
    }

    /// Weight multiplicities.
    pub fn character(&self) -> BTreeMap<Weight, usize> {
        let mut ch = BTreeMap::new();
        for w in &self.weights {
            *ch.entry(w.clone()).or_insert(0) += 1;
        }
        ch
    }

    /// sl2 on homogeneous polynomials of degree n with basis
    /// `x^k y^(n-k)`, `k = 0..=n`, and `e = y∂_x`, `f = x∂_y`.
    pub fn sl2_polynomial(n: usize) -> Self {
        let d = n + 1;
        let mut e = zero_matrix(d);
        let mut f = zero_matrix(d);
        let mut h = zero_matrix(d);
        for k in 0..=n {
            if k > 0 {
                e[k - 1][k] = rat(k as i64);
            }
            if k < n {
                f[k + 1][k] = rat((n - k) as i64);
            }
            h[k][k] = rat(n as i64 - 2 * k as i64);
        }
        Self::new(&CartanData::type_a(1), vec![e], vec![f], vec![h]).expect("diagonal h")
    }

    /// Exterior power Λ^k of the standard representation of sl_n.
    pub fn fundamental(n: usize, k: usize) -> Self {
        let subsets = k_subsets(n, k);
        let index: BTreeMap<Vec<usize>, usize> = subsets.iter().cloned().enumerate().map(|(a, s)| (s, a)).collect();
        let d = subsets.len();
        let r = n - 1;
        let mut e = vec![zero_matrix(d); r];
        let mut f = vec![zero_matrix(d); r];
        let mut h = vec![zero_matrix(d); r];
        for (col, s) in subsets.iter().enumerate() {
            for a in 0..r {
                let has_a = s.contains(&a);
                let has_b = s.contains(&(a + 1));
                // replacing a+1 by a (or back) keeps the sorted position
                if has_b && !has_a {
                    let t: Vec<usize> = s.iter().map(|&x| if x == a + 1 { a } else { x }).collect();
                    e[a][index[&t]][col] = rat(1);
                }
                if has_a && !has_b {
                    let t: Vec<usize> = s.iter().map(|&x| if x == a { a + 1 } else { x }).collect();
                    f[a][index[&t]][col] = rat(1);
                }
                h[a][col][col] = rat(i64::from(has_a) - i64::from(has_b));
            }
        }
        Self::new(&CartanData::type_a(r), e, f, h).expect("diagonal h")
    }

    /// Adjoint representation of sl_3 in the basis
    /// `E12, E23, E13, E21, E32, E31, H1, H2` with `H_i = E_ii - E_{i+1,i+1}`.
    pub fn adjoint_sl3() -> Self {
        let basis = adjoint_basis();
        let gens = |a: usize, b: usize| elementary(a, b);
        let action = |x: &[[Rational; 3]; 3]| -> Matrix<Rational> {
            let mut m = zero_matrix(8);
            for (col, b) in basis.iter().enumerate() {
                let c = sl3_coords(&bracket(x, b));
                for (row, v) in c.into_iter().enumerate() {
                    m[row][col] = v;
                }
            }
            m
        };
        let e = vec![action(&gens(0, 1)), action(&gens(1, 2))];
        let f = vec![action(&gens(1, 0)), action(&gens(2, 1))];
        let h = vec![action(&diag3(1, -1, 0)), action(&diag3(0, 1, -1))];
        Self::new(&CartanData::type_a(2), e, f, h).expect("adjoint action is diagonal on this basis")
    }

    /// Kronecker-sum action on `V ⊗ W`; basis `v_a ⊗ w_b` at index `a*dim W + b`.
    pub fn tensor(&self, other: &ExplicitRep) -> Result<Self> {
        if self.cartan != other.cartan {
            return Err(Error::Inconsistent("tensor factors of different Lie algebras".into()));
        }
        let (m, n) = (self.dim, other.dim);
        let kron = |a: &Matrix<Rational>, b: &Matrix<Rational>| -> Matrix<Rational> {
            let mut out = zero_matrix(m * n);
            for i in 0..m {
                for j in 0..m {
                    if !a[i][j].is_zero() {
                        for k in 0..n {
                            out[i * n + k][j * n + k] += &a[i][j];
                        }
                    }
                }
            }
            for i in 0..m {
                for k in 0..n {
                    for l in 0..n {
                        if !b[k][l].is_zero() {
                            out[i * n + k][i * n + l] += &b[k][l];
                        }
                    }
                }
            }
            out
        };
        let r = self.cartan.rank();
        let e = (0..r).map(|i| kron(&self.e[i], &other.e[i])).collect();
        let f = (0..r).map(|i| kron(&self.f[i], &other.f[i])).collect();
        let h = (0..r).map(|i| kron(&self.h[i], &other.h[i])).collect();
        Self::new(&self.cartan, e, f, h)
    }

    /// Irreducible representation V(λ) for type A. Rank one uses the
    /// polynomial model; higher rank takes the submodule generated by
    /// the highest weight vector of `⊗_k (Λ^k)^{⊗λ_k}`.
    pub fn irrep(cartan: &CartanData, lambda: &Weight) -> Result<Self> {
        let r = cartan.rank();
        if *cartan != CartanData::type_a(r) {
            return Err(Error::UnknownCartanType(format!("explicit irreps need type A, got {}", cartan.name())));
        }
        if lambda.rank() != r {
            return Err(Error::DimensionMismatch { expected: r, got: lambda.rank() });
        }
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.0.clone()));
        }
        if r == 1 {
            return Ok(Self::sl2_polynomial(lambda.0[0] as usize));
        }
        let n = r + 1;
        let mut ambient: Option<ExplicitRep> = None;
        for (k, &mult) in lambda.0.iter().enumerate() {
            for _ in 0..mult {
                let fk = Self::fundamental(n, k + 1);
                ambient = Some(match ambient {
                    None => fk,
                    Some(a) => {
                        if a.dim * fk.dim > MAX_AMBIENT_DIM {
                            return Err(Error::RankTooLarge {
                                rank: a.dim * fk.dim,
                                bound: MAX_AMBIENT_DIM,
                                what: "ambient tensor dimension",
                            });
                        }
                        a.tensor(&fk)?
                    }
                });
            }
        }
        let Some(ambient) = ambient else {
            let z = vec![zero_matrix(1); r];
            return Self::new(cartan, z.clone(), z.clone(), z);
        };
        // index 0 is the tensor of highest weight vectors
        let mut hw = vec![Rational::zero(); ambient.dim];
        hw[0] = rat(1);
        ambient.submodule(&hw)
    }

    /// Submodule generated by a weight vector under the lowering operators,
    /// with the action written in a basis of weight vectors.
    pub fn submodule(&self, generator: &[Rational]) -> Result<Self> {
        let wt = self.weight_of(generator).ok_or_else(|| Error::NotWeightBasis("generator".into()))?;
        let mut spaces: BTreeMap<Weight, Vec<Vec<Rational>>> = BTreeMap::new();
        let mut frontier = vec![(wt.clone(), generator.to_vec())];
        let top = wt.clone();
        spaces.insert(wt, vec![generator.to_vec()]);
        while let Some((w, v)) = frontier.pop() {
            for i in 0..self.cartan.rank() {
                let fv = linalg::mat_vec(&Q, &self.f[i], &v);
                if is_zero_vec(&fv) {
                    continue;
                }
                let nw = w.sub(&self.cartan.root_to_weight(&self.cartan.simple_root(i)));
                let space = spaces.entry(nw.clone()).or_default();
                let mut test = space.clone();
                test.push(fv.clone());
                if linalg::rank(&Q, &test, self.dim) > space.len() {
                    space.push(fv.clone());
                    frontier.push((nw, fv));
                }
            }
        }
        // weight spaces ordered by depth below the generator
        let depth = |w: &Weight| -> Rational { self.cartan.weight_to_root_rational(&top.sub(w)).iter().sum() };
        let mut ws: Vec<Weight> = spaces.keys().cloned().collect();
        ws.sort_by(|a, b| depth(a).cmp(&depth(b)).then(b.cmp(a)));
        let mut ordered: Vec<(Weight, Vec<Rational>)> = Vec::new();
        for w in ws {
            for v in &spaces[&w] {
                ordered.push((w.clone(), v.clone()));
            }
        }
        let d = ordered.len();
        let index_by_weight: BTreeMap<Weight, Vec<usize>> = ordered.iter().enumerate().fold(BTreeMap::new(), |mut m, (k, (w, _))| {
            m.entry(w.clone()).or_insert_with(Vec::new).push(k);
            m
        });
        let coords = |target: &Weight, vec: &[Rational]| -> Result<Vec<(usize, Rational)>> {
            if is_zero_vec(vec) {
                return Ok(vec![]);
            }
            let idx = index_by_weight
                .get(target)
                .ok_or_else(|| Error::Inconsistent("operator leaves the submodule".into()))?;
            // columns are the basis vectors of this weight space
            let a: Matrix<Rational> = (0..self.dim).map(|row| idx.iter().map(|&k| ordered[k].1[row].clone()).collect()).collect();
            let (x, _) = linalg::solve(&Q, &a, vec, idx.len())
                .ok_or_else(|| Error::Inconsistent("operator leaves the submodule".into()))?;
            Ok(idx.iter().copied().zip(x).collect())
        };
        let r = self.cartan.rank();
        let mut e = vec![zero_matrix(d); r];
        let mut f = vec![zero_matrix(d); r];
        let mut h = vec![zero_matrix(d); r];
        for (col, (w, v)) in ordered.iter().enumerate() {
            for i in 0..r {
                let ai = self.cartan.root_to_weight(&self.cartan.simple_root(i));
                for (row, c) in coords(&w.add(&ai), &linalg::mat_vec(&Q, &self.e[i], v))? {
                    e[i][row][col] = c;
                }
                for (row, c) in coords(&w.sub(&ai), &linalg::mat_vec(&Q, &self.f[i], v))? {
                    f[i][row][col] = c;
                }
                h[i][col][col] = rat(w.0[i]);
            }
        }
        Self::new(&self.cartan, e, f, h)
    }

    /// Weight of a vector if it is a weight vector.
    pub fn weight_of(&self, v: &[Rational]) -> Option<Weight> {
        let k = v.iter().position(|x| !x.is_zero())?;
        let mut w = Vec::new();
        for hi in &self.h {
            let hv = linalg::mat_vec(&Q, hi, v);
            let c = &hv[k] / &v[k];
            if hv.iter().zip(v).any(|(a, b)| *a != b * &c) || !c.is_integer() {
                return None;
            }
            w.push(crate::field::rational_to_i64(&c)?);
        }
        Some(Weight(w))
    }

    /// Check the Chevalley relations exactly.
    pub fn check_relations(&self) -> Result<()> {
        let r = self.cartan.rank();
        let zero = zero_matrix(self.dim);
        for i in 0..r {
            for j in 0..r {
                let ef = commutator(&self.e[i], &self.f[j]);
                let want = if i == j { self.h[i].clone() } else { zero.clone() };
                if ef != want {
                    return Err(Error::RelationFails(format!("[e{}, f{}]", i + 1, j + 1)));
                }
                let a = rat(self.cartan.entry(i, j));
                if commutator(&self.h[i], &self.e[j]) != mat_scale(&self.e[j], &a) {
                    return Err(Error::RelationFails(format!("[h{}, e{}]", i + 1, j + 1)));
                }
                if commutator(&self.h[i], &self.f[j]) != mat_scale(&self.f[j], &-a) {
                    return Err(Error::RelationFails(format!("[h{}, f{}]", i + 1, j + 1)));
                }
                if commutator(&self.h[i], &self.h[j]) != zero {
                    return Err(Error::RelationFails(format!("[h{}, h{}]", i + 1, j + 1)));
                }
            }
        }
        Ok(())
    }
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

type M3 = [[Rational; 3]; 3];

fn zero3() -> M3 {
    std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero()))
}

fn elementary(a: usize, b: usize) -> M3 {
    let mut m = zero3();
    m[a][b] = Rational::one();
    m
}

fn diag3(a: i64, b: i64, c: i64) -> M3 {
    let mut m = zero3();
    m[0][0] = rat(a);
    m[1][1] = rat(b);
    m[2][2] = rat(c);
    m
}

fn bracket(x: &M3, y: &M3) -> M3 {
    let mut out = zero3();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                out[i][j] += &x[i][k] * &y[k][j] - &y[i][k] * &x[k][j];
            }
        }
    }
    out
}

fn adjoint_basis() -> Vec<M3> {
    vec![
        elementary(0, 1),
        elementary(1, 2),
        elementary(0, 2),
        elementary(1, 0),
        elementary(2, 1),
        elementary(2, 0),
        diag3(1, -1, 0),
        diag3(0, 1, -1),
    ]
}

/// Coordinates of a traceless 3x3 matrix in the adjoint basis.
fn sl3_coords(m: &M3) -> Vec<Rational> {
    vec![
        m[0][1].clone(),
        m[1][2].clone(),
        m[0][2].clone(),
        m[1][0].clone(),
        m[2][1].clone(),
        m[2][0].clone(),
        m[0][0].clone(),
        &m[0][0] + &m[1][1],
    ]
}

/// Traceless 3x3 matrix with the given adjoint-basis coordinates.
pub fn sl3_matrix(c: &[Rational]) -> [[Rational; 3]; 3] {
    let mut m = zero3();
    m[0][1] = c[0].clone();
    m[1][2] = c[1].clone();
    m[0][2] = c[2].clone();
    m[1][0] = c[3].clone();
    m[2][1] = c[4].clone();
    m[2][0] = c[5].clone();
    m[0][0] = c[6].clone();
    m[1][1] = &c[7] - &c[6];
    m[2][2] = -c[7].clone();
    m
}

/// `dim ∩_i ker e_i^{⟨α_i^∨, μ⟩+1}` inside `V(λ)_{ν−μ}`, which is the
/// multiplicity of V(ν) in V(λ) ⊗ V(μ).
pub fn multiplicity_space_dim(cartan: &CartanData, lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<usize> {
    if !mu.is_dominant() {
        return Err(Error::NotDominant(mu.0.clone()));
    }
    if !nu.is_dominant() {
        return Err(Error::NotDominant(nu.0.clone()));
    }
    let v = ExplicitRep::irrep(cartan, lambda)?;
    let target = nu.sub(mu);
    let idx = v.weight_space(&target);
    if idx.is_empty() {
        return Ok(0);
    }
    // rows of the stacked map ⊕_i e_i^{μ_i+1} restricted to the weight space
    let mut rows: Matrix<Rational> = Vec::new();
    for (i, &m) in mu.0.iter().enumerate() {
        let images: Vec<Vec<Rational>> = idx
            .iter()
            .map(|&col| {
                let mut unit = vec![Rational::zero(); v.dim];
                unit[col] = rat(1);
                mat_pow_vec(&v.e[i], &unit, m as u64 + 1)
            })
            .collect();
        for row in 0..v.dim {
            rows.push(images.iter().map(|img| img[row].clone()).collect());
        }
    }
    Ok(idx.len() - linalg::rank(&Q, &rows, idx.len()))
}

/// Outcome of the perfect axiom for one basis vector and one index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectEntry {
    pub vector: usize,
    pub i: usize,
    pub epsilon: u64,
    /// Index of ẽ_i(b) in the basis, when ε_i(b) > 0 and a partner exists.
    pub partner: Option<usize>,
    /// `e_i b − ε ẽ_i(b)`, which must lie in `ker e_i^{ε−1}`.
    pub residual: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectBasisReport {
    pub entries: Vec<PerfectEntry>,
    /// Kernel filtration compatibility for every i and power.
    pub good: bool,
    pub passed: bool,
    pub failures: Vec<String>,
}

/// Check the perfect basis axiom for `basis` (vectors in the coordinates
/// of `rep`): each basis vector is a weight vector, the basis is
/// compatible with the kernels of every power of every e_i, and
/// `e_i b = ε_i(b) ẽ_i(b) + v` with `v ∈ ker e_i^{ε_i(b)−1}`.
pub fn verify_perfect(rep: &ExplicitRep, basis: &[Vec<Rational>]) -> Result<PerfectBasisReport> {
    let dim = rep.dim();
    if basis.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: basis.len() });
    }
    let mut weights = Vec::with_capacity(dim);
    for (k, b) in basis.iter().enumerate() {
        weights.push(rep.weight_of(b).ok_or_else(|| Error::NotWeightBasis(format!("basis vector {k}")))?);
    }
    if linalg::rank(&Q, &basis.to_vec(), dim) < dim {
        return Err(Error::Singular("basis vectors are linearly dependent".into()));
    }
    let r = rep.cartan().rank();
    let mut entries = Vec::new();
    let mut failures = Vec::new();
    let eps: Vec<Vec<u64>> = (0..r).map(|i| basis.iter().map(|b| nilpotency(rep.e(i), b)).collect()).collect();
    let mut good = true;
    for i in 0..r {
        let max = eps[i].iter().copied().max().unwrap_or(0);
        let mut power = linalg::identity(&Q, dim);
        for k in 1..=max + 1 {
            power = mat_mul(rep.e(i), &power);
            let ker = dim - linalg::rank(&Q, &power, dim);
            let count = eps[i].iter().filter(|&&e| e < k).count();
            if ker != count {
                good = false;
                failures.push(format!("e{} kernel of power {k}: dim {ker}, basis vectors {count}", i + 1));
            }
        }
    }
    for (k, b) in basis.iter().enumerate() {
        for i in 0..r {
            let epsilon = eps[i][k];
            if epsilon == 0 {
                continue;
            }
            let ai = rep.cartan().root_to_weight(&rep.cartan().simple_root(i));
            let target = weights[k].add(&ai);
            let eb = linalg::mat_vec(&Q, rep.e(i), b);
            let scale = rat(epsilon as i64);
            let mut found = None;
            for p in 0..dim {
                if weights[p] != target || eps[i][p] + 1 != epsilon {
                    continue;
                }
                let residual: Vec<Rational> = eb.iter().zip(&basis[p]).map(|(x, y)| x - &scale * y).collect();
                if is_zero_vec(&mat_pow_vec(rep.e(i), &residual, epsilon - 1)) {
                    found = Some((p, residual));
                    break;
                }
            }
            match found {
                Some((p, residual)) => entries.push(PerfectEntry { vector: k, i, epsilon, partner: Some(p), residual }),
                None => {
                    failures.push(format!("basis vector {k}: no partner for e{}", i + 1));
                    entries.push(PerfectEntry { vector: k, i, epsilon, partner: None, residual: eb });
                }
            }
        }
    }
    let passed = failures.is_empty();
    Ok(PerfectBasisReport { entries, good, passed, failures })
}

/// Scalars forced on a family of weight lines by the perfect axiom.
///
/// Basis vector k is `t_k · lines[k]`; `t_fixed = 1`. For every k and i with
/// ε = ε_i(lines[k]) > 0, the partner line is the unique line of weight
/// `wt + α_i` with ε_i = ε − 1, and the axiom becomes the linear condition
/// `t_k e_i(d_k) − ε t_p d_p ∈ ker e_i^{ε−1}`. Returns the unique solution.
pub fn force_scalars(rep: &ExplicitRep, lines: &[Vec<Rational>], fixed: usize) -> Result<Vec<Rational>> {
    let dim = rep.dim();
    let n = lines.len();
    let weights: Vec<Weight> = lines
        .iter()
        .enumerate()
        .map(|(k, d)| rep.weight_of(d).ok_or_else(|| Error::NotWeightBasis(format!("line {k}"))))
        .collect::<Result<_>>()?;
    let r = rep.cartan().rank();
    // each constraint: dim equations in t (n vars) plus fresh kernel vars
    let mut blocks: Vec<(Vec<Vec<Rational>>, Vec<Vec<Rational>>)> = Vec::new();
    for k in 0..n {
        for i in 0..r {
            let eps = nilpotency(rep.e(i), &lines[k]);
            if eps == 0 {
                continue;
            }
            let target = weights[k].add(&rep.cartan().root_to_weight(&rep.cartan().simple_root(i)));
            let partners: Vec<usize> = (0..n)
                .filter(|&p| weights[p] == target && nilpotency(rep.e(i), &lines[p]) + 1 == eps)
                .collect();
            let p = match partners.as_slice() {
                [p] => *p,
                [] => return Err(Error::Inconsistent(format!("line {k} has no e{} partner", i + 1))),
                _ => return Err(Error::Ambiguous(format!("line {k} has several e{} partners", i + 1))),
            };
            // columns: t (n), then the kernel basis of e_i^{ε−1} on the target weight space
            let idx = rep.weight_space(&target);
            let mut power = linalg::identity(&Q, dim);
            for _ in 1..eps {
                power = mat_mul(rep.e(i), &power);
            }
            let restricted: Matrix<Rational> = power.iter().map(|row| idx.iter().map(|&c| row[c].clone()).collect()).collect();
            let ker: Vec<Vec<Rational>> = linalg::kernel(&Q, &restricted, idx.len())
                .into_iter()
                .map(|v| {
                    let mut full = vec![Rational::zero(); dim];
                    for (c, x) in idx.iter().zip(v) {
                        full[*c] = x;
                    }
                    full
                })
                .collect();
            let ed = linalg::mat_vec(&Q, rep.e(i), &lines[k]);
            let mut t_cols = vec![vec![Rational::zero(); dim]; n];
            for row in 0..dim {
                t_cols[k][row] += &ed[row];
                t_cols[p][row] -= rat(eps as i64) * &lines[p][row];
            }
            let neg_ker: Vec<Vec<Rational>> = ker.iter().map(|v| v.iter().map(|x| -x.clone()).collect()).collect();
            blocks.push((t_cols, neg_ker));
        }
    }
    let extra: usize = blocks.iter().map(|(_, k)| k.len()).sum();
    let ncols = n + extra;
    let mut a: Matrix<Rational> = Vec::new();
    let mut rhs = Vec::new();
    let mut offset = n;
    for (t_cols, ker) in &blocks {
        for row in 0..dim {
            let mut line = vec![Rational::zero(); ncols];
            for (c, col) in t_cols.iter().enumerate() {
                line[c] = col[row].clone();
            }
            for (j, v) in ker.iter().enumerate() {
                line[offset + j] = v[row].clone();
            }
            a.push(line);
            rhs.push(Rational::zero());
        }
        offset += ker.len();
    }
    let mut norm = vec![Rational::zero(); ncols];
    norm[fixed] = rat(1);
    a.push(norm);
    rhs.push(rat(1));
    let (x, kernel) = linalg::solve(&Q, &a, &rhs, ncols)
        .ok_or_else(|| Error::Inconsistent("perfect axiom has no solution".into()))?;
    if kernel.iter().any(|v| v[..n].iter().any(|c| !c.is_zero())) {
        return Err(Error::Ambiguous("perfect axiom leaves scalars free".into()));
    }
    Ok(x[..n].to_vec())
}

/// Cartan basis vectors of the sl3 adjoint representation forced by the
/// perfect axiom once the highest root vector `E13` is in the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForcedAdjoint {
    /// Coefficient in `diag(−a, −a, 2a)`, the Cartan vector killed by e_1.
    pub a: Rational,
    /// Coefficient in `diag(2b, −b, −b)`, the Cartan vector killed by e_2.
    pub b: Rational,
    /// The two Cartan basis vectors as 3x3 matrices.
    pub cartan_vectors: [[[Rational; 3]; 3]; 2],
    /// Forced basis vectors: label and 3x3 matrix.
    pub basis: Vec<(String, [[Rational; 3]; 3])>,
}

/// Solve the sl3 adjoint example: root vectors are forced up to the
/// scalars fixed by the axiom; the zero weight space must be spanned by
/// the lines `ker e_1` and `ker e_2` (kernel compatibility).
pub fn force_sl3_adjoint() -> Result<ForcedAdjoint> {
    let rep = ExplicitRep::adjoint_sl3();
    let labels = ["E12", "E23", "E13", "E21", "E32", "E31"];
    let mut lines: Vec<Vec<Rational>> = (0..6)
        .map(|k| {
            let mut v = vec![Rational::zero(); 8];
            v[k] = rat(1);
            v
        })
        .collect();
    let zero_idx = rep.weight_space(&Weight(vec![0, 0]));
    for i in 0..2 {
        let restricted: Matrix<Rational> =
            rep.e(i).iter().map(|row| zero_idx.iter().map(|&c| row[c].clone()).collect()).collect();
        let ker = linalg::kernel(&Q, &restricted, zero_idx.len());
        if ker.len() != 1 {
            return Err(Error::Inconsistent(format!("ker e{} on the zero weight space has dim {}", i + 1, ker.len())));
        }
        let mut v = vec![Rational::zero(); 8];
        for (c, x) in zero_idx.iter().zip(&ker[0]) {
            v[*c] = x.clone();
        }
        // scale so that the E33 (resp. E11) entry reads 2
        let m = sl3_matrix(&v);
        let pivot = if i == 0 { &m[2][2] } else { &m[0][0] };
        let s = rat(2) / pivot;
        lines.push(v.iter().map(|x| x * &s).collect());
    }
    let t = force_scalars(&rep, &lines, 2)?;
    let vecs: Vec<[[Rational; 3]; 3]> =
        lines.iter().zip(&t).map(|(d, s)| sl3_matrix(&d.iter().map(|x| x * s).collect::<Vec<_>>())).collect();
    let a = t[6].clone();
    let b = t[7].clone();
    let mut basis: Vec<(String, [[Rational; 3]; 3])> =
        labels.iter().zip(&vecs).map(|(l, m)| (l.to_string(), m.clone())).collect();
    basis.push(("H_a".into(), vecs[6].clone()));
    basis.push(("H_b".into(), vecs[7].clone()));
    Ok(ForcedAdjoint { a, b, cartan_vectors: [vecs[6].clone(), vecs[7].clone()], basis })
}

/// Character-theoretic ground truth: Weyl dimension formula, Kostant's
/// weight multiplicity formula and the Brauer–Klimyk rule.
pub mod oracle {
    use std::collections::{BTreeMap, BTreeSet};

    use super::*;

    /// `Π_{β>0} ⟨λ+ρ, β^∨⟩ / ⟨ρ, β^∨⟩` for simply-laced types.
    pub fn weyl_dimension(cartan: &CartanData, lambda: &Weight) -> u64 {
        let lr = lambda.add(&cartan.rho());
        let mut num = Rational::one();
        for beta in cartan.positive_roots() {
            let p = |w: &Weight| -> i64 { beta.0.iter().zip(&w.0).map(|(c, x)| c * x).sum() };
            num *= Rational::new(p(&lr).into(), p(&cartan.rho()).into());
        }
        num.to_integer().try_into().expect("dimension fits in u64")
    }

    /// `m_λ(μ) = Σ_w sign(w) P(w(λ+ρ) − (μ+ρ))`.
    pub fn weight_multiplicity(cartan: &CartanData, lambda: &Weight, mu: &Weight) -> u64 {
        let lr = lambda.add(&cartan.rho());
        let mr = mu.add(&cartan.rho());
        let mut total: i64 = 0;
        for w in cartan.weyl_group() {
            let img = cartan.apply_word_to_weight(&w.0, &lr);
            let Some(diff) = cartan.weight_to_root(&img.sub(&mr)) else { continue };
            let p = cartan.kostant_partition(&diff) as i64;
            total += if w.len() % 2 == 0 { p } else { -p };
        }
        total.try_into().expect("multiplicities are nonnegative")
    }

    /// Full character of V(λ).
    pub fn character(cartan: &CartanData, lambda: &Weight) -> BTreeMap<Weight, u64> {
        let mut out = BTreeMap::new();
        let mut seen = BTreeSet::new();
        let mut stack = vec![lambda.clone()];
        seen.insert(lambda.clone());
        while let Some(mu) = stack.pop() {
            let m = weight_multiplicity(cartan, lambda, &mu);
            if m == 0 {
                continue;
            }
            out.insert(mu.clone(), m);
            for i in 0..cartan.rank() {
                let next = mu.sub(&cartan.root_to_weight(&cartan.simple_root(i)));
                if seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
        out
    }

    /// Move `γ` to the dominant chamber; returns the image and the parity
    /// of the Weyl element, or `None` if `γ` lies on a wall.
    fn dominant_conjugate(cartan: &CartanData, gamma: &Weight) -> Option<(Weight, bool)> {
        let mut g = gamma.clone();
        let mut odd = false;
        loop {
            if g.0.iter().any(|&c| c == 0) {
                return None;
            }
            match g.0.iter().position(|&c| c < 0) {
                None => return Some((g, odd)),
                Some(i) => {
                    g = cartan.reflect_weight(i, &g);
                    odd = !odd;
                }
            }
        }
    }

    /// All c^ν_{λμ} by the Brauer–Klimyk rule.
    pub fn tensor_decomposition(cartan: &CartanData, lambda: &Weight, mu: &Weight) -> BTreeMap<Weight, u64> {
        let rho = cartan.rho();
        let mut out: BTreeMap<Weight, i64> = BTreeMap::new();
        for (wt, m) in character(cartan, mu) {
            let gamma = lambda.add(&wt).add(&rho);
            if let Some((dom, odd)) = dominant_conjugate(cartan, &gamma) {
                let e = out.entry(dom.sub(&rho)).or_insert(0);
                *e += if odd { -(m as i64) } else { m as i64 };
            }
        }
        out.into_iter().filter(|(_, c)| *c != 0).map(|(w, c)| (w, c as u64)).collect()
    }

    pub fn tensor_multiplicity(cartan: &CartanData, lambda: &Weight, mu: &Weight, nu: &Weight) -> u64 {
        tensor_decomposition(cartan, lambda, mu).get(nu).copied().unwrap_or(0)
    }

    /// Tensor multiplicity from weight multiplicities alone:
    /// `c^ν_{λμ} = Σ_w sign(w) m_λ(w(ν+ρ) − (μ+ρ))` (Racah–Speiser form).
    pub fn tensor_multiplicity_racah(cartan: &CartanData, lambda: &Weight, mu: &Weight, nu: &Weight) -> u64 {
        let rho = cartan.rho();
        let mut total: i64 = 0;
        for w in cartan.weyl_group() {
            let img = cartan.apply_word_to_weight(&w.0, &nu.add(&rho));
            let target = img.sub(&mu.add(&rho));
            let m = weight_multiplicity(cartan, lambda, &target) as i64;
            total += if w.len() % 2 == 0 { m } else { -m };
        }
        total.max(0) as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn a2() -> CartanData {
        CartanData::type_a(2)
    }

    #[test]
    fn sl2_polynomial_model_is_perfect() {
        for n in 0..6 {
            let v = ExplicitRep::sl2_polynomial(n);
            v.check_relations().unwrap();
            let basis = linalg::identity(&Q, n + 1);
            let report = verify_perfect(&v, &basis).unwrap();
            assert!(report.passed && report.good);
            for e in &report.entries {
                assert_eq!(e.epsilon, e.vector as u64);
                assert!(is_zero_vec(&e.residual));
            }
        }
    }

    #[test]
    fn fundamentals_and_tensor() {
        let v1 = ExplicitRep::fundamental(3, 1);
        let v2 = ExplicitRep::fundamental(3, 2);
        v1.check_relations().unwrap();
        v2.check_relations().unwrap();
        let t = v1.tensor(&v2).unwrap();
        assert_eq!(t.dim(), 9);
        t.check_relations().unwrap();
    }

    #[test]
    fn adjoint_irrep() {
        let v = ExplicitRep::irrep(&a2(), &Weight(vec![1, 1])).unwrap();
        assert_eq!(v.dim(), 8);
        v.check_relations().unwrap();
        assert_eq!(v.weight_space(&Weight(vec![0, 0])).len(), 2);
        assert_eq!(v.character(), oracle::character(&a2(), &Weight(vec![1, 1])).into_iter().map(|(w, m)| (w, m as usize)).collect());
        ExplicitRep::adjoint_sl3().check_relations().unwrap();
    }

    #[test]
    fn multiplicity_spaces() {
        let c = a2();
        let th = Weight(vec![1, 1]);
        assert_eq!(multiplicity_space_dim(&c, &th, &th, &th).unwrap(), 2);
        assert_eq!(multiplicity_space_dim(&c, &Weight(vec![1, 0]), &Weight(vec![0, 1]), &Weight(vec![0, 0])).unwrap(), 1);
        let z = Weight(vec![0, 0]);
        assert_eq!(multiplicity_space_dim(&c, &th, &z, &th).unwrap(), 1);
        assert_eq!(multiplicity_space_dim(&c, &th, &z, &Weight(vec![3, 0])).unwrap(), 0);
    }

    #[test]
    fn oracles_agree() {
        let c = a2();
        assert_eq!(oracle::weyl_dimension(&c, &Weight(vec![1, 1])), 8);
        assert_eq!(oracle::weight_multiplicity(&c, &Weight(vec![1, 1]), &Weight(vec![0, 0])), 2);
        let dec = oracle::tensor_decomposition(&c, &Weight(vec![1, 1]), &Weight(vec![1, 1]));
        assert_eq!(dec[&Weight(vec![1, 1])], 2);
        let total: u64 = dec.iter().map(|(nu, m)| m * oracle::weyl_dimension(&c, nu)).sum();
        assert_eq!(total, 64);
        for (nu, m) in dec {
            assert_eq!(oracle::tensor_multiplicity_racah(&c, &Weight(vec![1, 1]), &Weight(vec![1, 1]), &nu), m);
        }
    }

    #[test]
    fn adjoint_forcing() {
        let forced = force_sl3_adjoint().unwrap();
        assert_eq!(forced.a, ratio(1, 3));
        assert_eq!(forced.b, ratio(1, 3));
        assert_eq!(forced.cartan_vectors[0][2][2], ratio(2, 3));
        assert_eq!(forced.cartan_vectors[1][0][0], ratio(2, 3));
        // the forced family is a perfect basis
        let rep = ExplicitRep::adjoint_sl3();
        let basis: Vec<Vec<Rational>> = forced.basis.iter().map(|(_, m)| sl3_coords(m)).collect();
        let report = verify_perfect(&rep, &basis).unwrap();
        assert!(report.passed && report.good, "{:?}", report.failures);
    }

    #[test]
    fn non_weight_basis_rejected() {
        let v = ExplicitRep::sl2_polynomial(1);
        let basis = vec![vec![rat(1), rat(1)], vec![rat(0), rat(1)]];
        assert!(matches!(verify_perfect(&v, &basis), Err(Error::NotWeightBasis(_))));
    }
}
