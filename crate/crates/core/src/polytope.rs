//! Exact lattice polytopes in the root lattice, stored by vertex list.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rootdata::RootVector;
use crate::{Error, Rational, Result};

/// Largest ambient dimension handled.
pub const MAX_DIM: usize = 8;

/// Convex hull of finitely many lattice points, kept as its sorted list of
/// extreme points so that equality is list equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<RootVector>,
}

/// Exact hull by extreme-point elimination.
pub fn hull(points: &[RootVector]) -> Result<LatticePolytope> {
    let first = points.first().ok_or(Error::Empty("point set"))?;
    let dim = first.rank();
    if dim > MAX_DIM {
        return Err(Error::RankTooLarge { rank: dim, bound: MAX_DIM, what: "polytope ambient dimension" });
    }
    if let Some(p) = points.iter().find(|p| p.rank() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, got: p.rank() });
    }
    let mut pts: Vec<RootVector> = points.to_vec();
    pts.sort();
    pts.dedup();
    let mut k = 0;
    while k < pts.len() {
        let others: Vec<&RootVector> = pts.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, p)| p).collect();
        if !others.is_empty() && in_hull(&pts[k], &others) {
            pts.remove(k);
        } else {
            k += 1;
        }
    }
    Ok(LatticePolytope { dim, vertices: pts })
}

/// Whether `p` is a convex combination of `pts`, decided by an exact
/// phase-one simplex method with Bland's rule.
pub fn in_hull(p: &RootVector, pts: &[&RootVector]) -> bool {
    if pts.is_empty() {
        return false;
    }
    let n = pts.len();
    let m = p.rank() + 1;
    // rows: coordinates, then Σλ = 1
    let width = n + m + 1;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for r in 0..m {
        let mut row = vec![Rational::zero(); width];
        for (j, v) in pts.iter().enumerate() {
            row[j] = if r + 1 < m { Rational::from_integer(v.0[r].into()) } else { crate::rat(1) };
        }
        let mut rhs = if r + 1 < m { Rational::from_integer(p.0[r].into()) } else { crate::rat(1) };
        if rhs.is_negative() {
            for x in row.iter_mut().take(n) {
                *x = -x.clone();
            }
            rhs = -rhs;
        }
        row[n + r] = crate::rat(1);
        row[width - 1] = rhs;
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut obj = vec![Rational::zero(); width];
    for row in &t {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[width - 1] -= &row[width - 1];
    }
    loop {
        let Some(enter) = (0..width - 1).find(|&j| obj[j].is_negative()) else { break };
        let mut best: Option<(usize, Rational)> = None;
        for r in 0..m {
            if t[r][enter].is_positive() {
                let ratio = &t[r][width - 1] / &t[r][enter];
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && basis[r] < basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
        }
        let Some((pr, _)) = best else { break };
        let piv = t[pr][enter].clone();
        for x in t[pr].iter_mut() {
            *x /= &piv;
        }
        let prow = t[pr].clone();
        for (r, row) in t.iter_mut().enumerate() {
            if r != pr && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        let f = obj[enter].clone();
        for (x, y) in obj.iter_mut().zip(&prow) {
            *x -= &f * y;
        }
        basis[pr] = enter;
    }
    obj[width - 1].is_zero()
}

impl LatticePolytope {
    pub fn point(p: RootVector) -> Self {
        LatticePolytope { dim: p.rank(), vertices: vec![p] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RootVector] {
        &self.vertices
    }

    pub fn equals(&self, other: &LatticePolytope) -> bool {
        self == other
    }

    pub fn contains(&self, x: &RootVector) -> Result<bool> {
        if x.rank() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.rank() });
        }
        let refs: Vec<&RootVector> = self.vertices.iter().collect();
        Ok(in_hull(x, &refs))
    }

    /// `max_{v} φ(v)` for `φ` given by its values on the simple roots.
    pub fn support(&self, phi: &[Rational]) -> Result<Rational> {
        if phi.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: phi.len() });
        }
        let value = |v: &RootVector| -> Rational {
            v.0.iter().zip(phi).map(|(&c, a)| a * Rational::from_integer(c.into())).sum()
        };
        Ok(self.vertices.iter().map(value).max().expect("polytopes are nonempty"))
    }

    pub fn translate(&self, by: &RootVector) -> LatticePolytope {
        let mut vertices: Vec<RootVector> = self.vertices.iter().map(|v| v.add(by)).collect();
        vertices.sort();
        LatticePolytope { dim: self.dim, vertices }
    }

    /// Image under `v ↦ -v`.
    pub fn negate(&self) -> LatticePolytope {
        let mut vertices: Vec<RootVector> = self.vertices.iter().map(RootVector::neg).collect();
        vertices.sort();
        LatticePolytope { dim: self.dim, vertices }
    }

    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl fmt::Display for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
