//! Finite-type root data: Cartan matrices, weights in fundamental-weight
//! coordinates, roots in simple-root coordinates, Weyl group words.
//!
//! Indices are 0-based internally. Text interfaces (type strings, words,
//! CLI flags) are 1-based and converted at the boundary.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Rational, Result};

/// Largest rank for which reduced words of w0 are enumerated exhaustively.
pub const MAX_WORD_RANK: usize = 4;
/// Largest supported rank overall.
pub const MAX_RANK: usize = 8;

/// Integer vector in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

/// Integer vector in simple-root coordinates. Entries may be negative;
/// membership in Q_+ is checked with [`RootVector::is_nonnegative`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootVector(pub Vec<i64>);

/// A word in the simple reflections (0-based letters).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReducedWord(pub Vec<usize>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }
    pub fn rank(&self) -> usize {
        self.0.len()
    }
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }
    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl RootVector {
    pub fn zero(rank: usize) -> Self {
        RootVector(vec![0; rank])
    }
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        RootVector(v)
    }
    pub fn rank(&self) -> usize {
        self.0.len()
    }
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }
    pub fn add(&self, other: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
    pub fn sub(&self, other: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
    pub fn scale(&self, k: i64) -> RootVector {
        RootVector(self.0.iter().map(|a| a * k).collect())
    }
    pub fn neg(&self) -> RootVector {
        self.scale(-1)
    }
    /// `self <= other` coordinatewise.
    pub fn le(&self, other: &RootVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for RootVector {
    /// `2a1+a2` style; `0` for the zero vector.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "a{}", i + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl ReducedWord {
    /// Build from 1-based letters, as written in text.
    pub fn from_one_based(letters: &[usize]) -> Self {
        ReducedWord(letters.iter().map(|&i| i - 1).collect())
    }
    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i + 1).collect()
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn reversed(&self) -> ReducedWord {
        ReducedWord(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Parse a comma-separated list of integers, e.g. `"3,2,1"`.
pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer `{t}` in `{s}`")))
        })
        .collect()
}

/// Parse a 1-based comma-separated word like `"1,2,1"`.
pub fn parse_word(s: &str) -> Result<ReducedWord> {
    let v = parse_int_list(s)?;
    if v.iter().any(|&i| i < 1) {
        return Err(Error::Parse(format!("word letters are 1-based: `{s}`")));
    }
    Ok(ReducedWord(v.iter().map(|&i| i as usize - 1).collect()))
}

/// Cartan data of a finite-type root system (possibly reducible, e.g. `A1xA1`).
///
/// `matrix[i][j] = <α_i^∨, α_j>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanData {
    name: String,
    matrix: Vec<Vec<i64>>,
}

fn irreducible_matrix(letter: char, n: usize) -> Result<Vec<Vec<i64>>> {
    let bad = || Error::UnknownCartanType(format!("{letter}{n}"));
    let valid = match letter {
        'A' => n >= 1,
        'B' | 'C' => n >= 2,
        'D' => n >= 4,
        'E' => (6..=8).contains(&n),
        'F' => n == 4,
        'G' => n == 2,
        _ => false,
    };
    if !valid {
        return Err(bad());
    }
    if n > MAX_RANK {
        return Err(Error::RankTooLarge { rank: n, bound: MAX_RANK, what: "Cartan data" });
    }
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        m[i][j] = -1;
        m[j][i] = -1;
    };
    match letter {
        'A' | 'B' | 'C' => (0..n - 1).for_each(|i| link(i, i + 1)),
        'D' => {
            (0..n - 2).for_each(|i| link(i, i + 1));
            link(n - 3, n - 1);
        }
        'E' => {
            // Bourbaki: 1-3-4-5-6(-7-8), 2 attached to 4.
            link(0, 2);
            link(1, 3);
            (2..n - 1).for_each(|i| link(i, i + 1));
        }
        'F' | 'G' => (0..n - 1).for_each(|i| link(i, i + 1)),
        _ => unreachable!(),
    }
    match letter {
        // α_n short
        'B' => m[n - 1][n - 2] = -2,
        // α_n long
        'C' => m[n - 2][n - 1] = -2,
        'F' => m[2][1] = -2,
        'G' => m[0][1] = -3,
        _ => {}
    }
    Ok(m)
}

impl CartanData {
    /// Parse `"A2"`, `"D4"`, `"A1xA1"`, ...
    pub fn parse(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for part in s.split(['x', '×']) {
            let part = part.trim();
            let mut chars = part.chars();
            let letter = chars
                .next()
                .ok_or_else(|| Error::UnknownCartanType(s.to_string()))?
                .to_ascii_uppercase();
            let n: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::UnknownCartanType(s.to_string()))?;
            blocks.push(irreducible_matrix(letter, n)?);
        }
        let rank: usize = blocks.iter().map(Vec::len).sum();
        if rank > MAX_RANK {
            return Err(Error::RankTooLarge { rank, bound: MAX_RANK, what: "Cartan data" });
        }
        let mut matrix = vec![vec![0; rank]; rank];
        let mut off = 0;
        for b in &blocks {
            for (i, row) in b.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    matrix[off + i][off + j] = v;
                }
            }
            off += b.len();
        }
        let name = s
            .split(['x', '×'])
            .map(|p| p.trim().to_ascii_uppercase())
            .collect::<Vec<_>>()
            .join("x");
        Ok(CartanData { name, matrix })
    }

    /// Type A_n.
    pub fn type_a(n: usize) -> Self {
        Self::parse(&format!("A{n}")).expect("valid type A")
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn rank(&self) -> usize {
        self.matrix.len()
    }
    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    pub fn is_simply_laced(&self) -> bool {
        (0..self.rank())
            .all(|i| (0..self.rank()).all(|j| i == j || self.matrix[i][j] * self.matrix[j][i] <= 1))
    }

    /// Number of letters in the braid relation between `s_i` and `s_j`.
    pub fn braid_length(&self, i: usize, j: usize) -> usize {
        match self.matrix[i][j] * self.matrix[j][i] {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            _ => unreachable!("finite type"),
        }
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, rank: self.rank() })
        }
    }

    /// `<α_i^∨, λ>`.
    pub fn pairing(&self, i: usize, lambda: &Weight) -> Result<i64> {
        self.check_index(i)?;
        if lambda.rank() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: lambda.rank() });
        }
        Ok(lambda.0[i])
    }

    /// `<α_i^∨, β>` for β in root coordinates.
    pub fn root_pairing(&self, i: usize, beta: &RootVector) -> i64 {
        self.matrix[i].iter().zip(&beta.0).map(|(a, b)| a * b).sum()
    }

    pub fn simple_root(&self, i: usize) -> RootVector {
        RootVector::simple(self.rank(), i)
    }

    /// Convert a root-lattice vector to fundamental-weight coordinates.
    pub fn root_to_weight(&self, beta: &RootVector) -> Weight {
        Weight((0..self.rank()).map(|i| self.root_pairing(i, beta)).collect())
    }

    /// Express a weight in simple-root coordinates (rational in general).
    pub fn weight_to_root_rational(&self, lambda: &Weight) -> Vec<Rational> {
        let n = self.rank();
        let q = crate::field::Rationals;
        let a: Vec<Vec<Rational>> = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|&v| crate::rat(v)).collect())
            .collect();
        let b: Vec<Rational> = lambda.0.iter().map(|&v| crate::rat(v)).collect();
        crate::linalg::solve(&q, &a, &b, n).expect("Cartan matrix is invertible").0
    }

    /// The root-lattice vector equal to `lambda`, if it lies in the root lattice.
    pub fn weight_to_root(&self, lambda: &Weight) -> Option<RootVector> {
        self.weight_to_root_rational(lambda)
            .iter()
            .map(crate::field::rational_to_i64)
            .collect::<Option<Vec<_>>>()
            .map(RootVector)
    }

    /// `s_i(β) = β - <α_i^∨, β> α_i`.
    pub fn reflect_root(&self, i: usize, beta: &RootVector) -> RootVector {
        let mut out = beta.clone();
        out.0[i] -= self.root_pairing(i, beta);
        out
    }

    /// `s_i(λ) = λ - <α_i^∨, λ> α_i`, in weight coordinates.
    pub fn reflect_weight(&self, i: usize, lambda: &Weight) -> Weight {
        let c = lambda.0[i];
        Weight(lambda.0.iter().enumerate().map(|(k, &v)| v - c * self.matrix[k][i]).collect())
    }

    /// `ρ = Σ ω_i`.
    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    /// All positive roots, sorted by height then lexicographically.
    pub fn positive_roots(&self) -> Vec<RootVector> {
        let n = self.rank();
        let mut seen: HashSet<RootVector> = HashSet::new();
        let mut queue: VecDeque<RootVector> = (0..n).map(|i| self.simple_root(i)).collect();
        for r in &queue {
            seen.insert(r.clone());
        }
        while let Some(r) = queue.pop_front() {
            for i in 0..n {
                let s = self.reflect_root(i, &r);
                if !seen.contains(&s) {
                    seen.insert(s.clone());
                    queue.push_back(s);
                }
            }
        }
        let mut pos: Vec<RootVector> = seen.into_iter().filter(|r| r.is_nonnegative()).collect();
        pos.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
        pos
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots().len()
    }

    /// Apply `s_{i_1} ... s_{i_k}` to a root (rightmost letter first).
    pub fn apply_word_to_root(&self, word: &[usize], beta: &RootVector) -> RootVector {
        word.iter().rev().fold(beta.clone(), |b, &i| self.reflect_root(i, &b))
    }

    pub fn apply_word_to_weight(&self, word: &[usize], lambda: &Weight) -> Weight {
        word.iter().rev().fold(lambda.clone(), |l, &i| self.reflect_weight(i, &l))
    }

    /// `β_k = s_{i_1} ... s_{i_{k-1}}(α_{i_k})`; errors if the word is not reduced.
    pub fn word_roots(&self, word: &ReducedWord) -> Result<Vec<RootVector>> {
        for &i in &word.0 {
            self.check_index(i)?;
        }
        let mut out = Vec::with_capacity(word.len());
        for k in 0..word.len() {
            let beta = self.apply_word_to_root(&word.0[..k], &self.simple_root(word.0[k]));
            if !beta.is_nonnegative() {
                return Err(Error::NotReduced(word.one_based()));
            }
            out.push(beta);
        }
        Ok(out)
    }

    pub fn is_reduced(&self, word: &ReducedWord) -> bool {
        self.word_roots(word).is_ok()
    }

    /// Reduced word for w0 of length #positive roots.
    pub fn is_longest_word(&self, word: &ReducedWord) -> bool {
        word.len() == self.num_positive_roots() && self.is_reduced(word)
    }

    /// All reduced words of w0, in lexicographic order.
    pub fn reduced_words_w0(&self) -> Result<Vec<ReducedWord>> {
        if self.rank() > MAX_WORD_RANK {
            return Err(Error::RankTooLarge {
                rank: self.rank(),
                bound: MAX_WORD_RANK,
                what: "reduced-word enumeration",
            });
        }
        let n = self.rank();
        let target = self.num_positive_roots();
        let mut out = Vec::new();
        let mut word = Vec::new();
        self.extend_words(&mut word, target, n, &mut out);
        Ok(out)
    }

    fn extend_words(&self, word: &mut Vec<usize>, target: usize, n: usize, out: &mut Vec<ReducedWord>) {
        if word.len() == target {
            out.push(ReducedWord(word.clone()));
            return;
        }
        for i in 0..n {
            // w s_i > w iff w(α_i) > 0
            if self.apply_word_to_root(word, &self.simple_root(i)).is_nonnegative() {
                word.push(i);
                self.extend_words(word, target, n, out);
                word.pop();
            }
        }
    }

    /// One reduced word for w0 (lexicographically least).
    pub fn longest_word(&self) -> ReducedWord {
        let n = self.rank();
        let mut word = Vec::new();
        loop {
            let next = (0..n).find(|&i| self.apply_word_to_root(&word, &self.simple_root(i)).is_nonnegative());
            match next {
                Some(i) => word.push(i),
                None => return ReducedWord(word),
            }
        }
    }

    /// Words obtained from `w` by a single braid (or commutation) move.
    pub fn braid_neighbors(&self, w: &ReducedWord) -> Vec<ReducedWord> {
        let mut out = BTreeSet::new();
        let letters = &w.0;
        for start in 0..letters.len() {
            if start + 1 >= letters.len() {
                break;
            }
            let (i, j) = (letters[start], letters[start + 1]);
            if i == j {
                continue;
            }
            let m = self.braid_length(i, j);
            if start + m > letters.len() {
                continue;
            }
            let alternating = (0..m).all(|k| letters[start + k] == if k % 2 == 0 { i } else { j });
            if alternating {
                let mut new = letters.clone();
                for k in 0..m {
                    new[start + k] = if k % 2 == 0 { j } else { i };
                }
                out.insert(ReducedWord(new));
            }
        }
        out.into_iter().collect()
    }

    /// Involution σ of the Dynkin diagram with `-w0(α_i) = α_{σ(i)}`.
    pub fn star_involution(&self) -> Vec<usize> {
        let w0 = self.longest_word();
        (0..self.rank())
            .map(|i| {
                let img = self.apply_word_to_root(&w0.0, &self.simple_root(i)).neg();
                img.0.iter().position(|&c| c == 1).expect("-w0 permutes simple roots")
            })
            .collect()
    }

    /// Number of multisets of positive roots summing to ν.
    pub fn kostant_partition(&self, nu: &RootVector) -> u64 {
        if !nu.is_nonnegative() {
            return 0;
        }
        let roots = self.positive_roots();
        let mut memo = HashMap::new();
        kostant_rec(&roots, 0, nu, &mut memo)
    }

    /// Weyl group elements, each given by a reduced word, sorted by length.
    pub fn weyl_group(&self) -> Vec<ReducedWord> {
        let rho = self.rho();
        let mut seen: HashMap<Weight, ReducedWord> = HashMap::new();
        seen.insert(rho.clone(), ReducedWord(vec![]));
        let mut frontier = vec![(rho, ReducedWord(vec![]))];
        let mut all = vec![ReducedWord(vec![])];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (img, word) in &frontier {
                for i in 0..self.rank() {
                    // left multiplication by s_i
                    let new_img = self.reflect_weight(i, img);
                    if !seen.contains_key(&new_img) {
                        let mut w = vec![i];
                        w.extend(&word.0);
                        let w = ReducedWord(w);
                        seen.insert(new_img.clone(), w.clone());
                        all.push(w.clone());
                        next.push((new_img, w));
                    }
                }
            }
            frontier = next;
        }
        all
    }
}

fn kostant_rec(
    roots: &[RootVector],
    idx: usize,
    nu: &RootVector,
    memo: &mut HashMap<(usize, RootVector), u64>,
) -> u64 {
    if nu.is_zero() {
        return 1;
    }
    if idx == roots.len() {
        return 0;
    }
    if let Some(&v) = memo.get(&(idx, nu.clone())) {
        return v;
    }
    let mut total = 0;
    let mut rest = nu.clone();
    while rest.is_nonnegative() {
        total += kostant_rec(roots, idx + 1, &rest, memo);
        rest = rest.sub(&roots[idx]);
    }
    memo.insert((idx, nu.clone()), total);
    total
}

impl FromStr for CartanData {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CartanData::parse(s)
    }
}

impl fmt::Display for CartanData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CartanData {
        CartanData::parse("A2").unwrap()
    }

    #[test]
    fn cartan_invariants() {
        for name in ["A1", "A3", "B3", "C3", "D4", "D5", "E6", "E7", "E8", "F4", "G2", "A1xA1"] {
            let cd = CartanData::parse(name).unwrap();
            for i in 0..cd.rank() {
                assert_eq!(cd.entry(i, i), 2);
                for j in 0..cd.rank() {
                    if i != j {
                        assert!(cd.entry(i, j) <= 0);
                        assert_eq!(cd.entry(i, j) == 0, cd.entry(j, i) == 0);
                    }
                    assert_eq!(cd.root_pairing(i, &cd.simple_root(j)), cd.entry(i, j));
                }
            }
        }
    }

    #[test]
    fn parse_errors() {
        assert!(CartanData::parse("Z3").is_err());
        assert!(CartanData::parse("D3").is_err());
        assert!(CartanData::parse("A9").is_err());
        assert!(CartanData::parse("").is_err());
    }

    #[test]
    fn pairing_examples() {
        let cd = a2();
        assert_eq!(cd.pairing(0, &Weight(vec![1, 0])).unwrap(), 1);
        let alpha2 = cd.root_to_weight(&cd.simple_root(1));
        assert_eq!(cd.pairing(0, &alpha2).unwrap(), -1);
        assert_eq!(cd.pairing(1, &cd.rho()).unwrap(), 1);
        assert!(matches!(cd.pairing(2, &cd.rho()), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn root_counts() {
        let a2 = a2();
        let roots = a2.positive_roots();
        assert_eq!(roots, vec![RootVector(vec![1, 0]), RootVector(vec![0, 1]), RootVector(vec![1, 1])]);
        let expected = [("A3", 6), ("D4", 12), ("B2", 4), ("G2", 6), ("F4", 24), ("E6", 36), ("E8", 120)];
        for (name, n) in expected {
            assert_eq!(CartanData::parse(name).unwrap().num_positive_roots(), n, "{name}");
        }
    }

    #[test]
    fn reflections_permute_other_positive_roots() {
        for name in ["A3", "B3", "D4", "G2"] {
            let cd = CartanData::parse(name).unwrap();
            let pos: BTreeSet<_> = cd.positive_roots().into_iter().collect();
            for i in 0..cd.rank() {
                let simple = cd.simple_root(i);
                let others: BTreeSet<_> = pos.iter().filter(|r| **r != simple).cloned().collect();
                let image: BTreeSet<_> = others.iter().map(|r| cd.reflect_root(i, r)).collect();
                assert_eq!(others, image, "{name} s_{i}");
            }
        }
    }

    #[test]
    fn reduced_word_counts() {
        let words = a2().reduced_words_w0().unwrap();
        assert_eq!(
            words,
            vec![ReducedWord::from_one_based(&[1, 2, 1]), ReducedWord::from_one_based(&[2, 1, 2])]
        );
        let a1a1 = CartanData::parse("A1xA1").unwrap().reduced_words_w0().unwrap();
        assert_eq!(a1a1, vec![ReducedWord(vec![0, 1]), ReducedWord(vec![1, 0])]);
        assert_eq!(CartanData::parse("A3").unwrap().reduced_words_w0().unwrap().len(), 16);
        assert_eq!(CartanData::parse("B2").unwrap().reduced_words_w0().unwrap().len(), 2);
        assert!(CartanData::parse("A5").unwrap().reduced_words_w0().is_err());
    }

    #[test]
    fn braid_graph_connected() {
        for name in ["A2", "A3", "B3", "D4", "A1xA1", "G2"] {
            let cd = CartanData::parse(name).unwrap();
            let words: BTreeSet<_> = cd.reduced_words_w0().unwrap().into_iter().collect();
            let start = words.iter().next().unwrap().clone();
            let mut seen = BTreeSet::from([start.clone()]);
            let mut stack = vec![start];
            while let Some(w) = stack.pop() {
                for nb in cd.braid_neighbors(&w) {
                    assert!(words.contains(&nb));
                    if seen.insert(nb.clone()) {
                        stack.push(nb);
                    }
                }
            }
            assert_eq!(seen, words, "{name}");
        }
    }

    #[test]
    fn word_roots_examples() {
        let cd = a2();
        let r = cd.word_roots(&ReducedWord::from_one_based(&[1, 2, 1])).unwrap();
        assert_eq!(r, vec![RootVector(vec![1, 0]), RootVector(vec![1, 1]), RootVector(vec![0, 1])]);
        let r = cd.word_roots(&ReducedWord::from_one_based(&[2, 1, 2])).unwrap();
        assert_eq!(r, vec![RootVector(vec![0, 1]), RootVector(vec![1, 1]), RootVector(vec![1, 0])]);
        assert_eq!(cd.word_roots(&ReducedWord(vec![1])).unwrap(), vec![cd.simple_root(1)]);
        assert!(matches!(
            cd.word_roots(&ReducedWord::from_one_based(&[1, 1])),
            Err(Error::NotReduced(_))
        ));
    }

    #[test]
    fn word_roots_permute_positive_roots() {
        for name in ["A3", "D4", "B3"] {
            let cd = CartanData::parse(name).unwrap();
            let pos: BTreeSet<_> = cd.positive_roots().into_iter().collect();
            for w in cd.reduced_words_w0().unwrap().iter().take(50) {
                let r: BTreeSet<_> = cd.word_roots(w).unwrap().into_iter().collect();
                assert_eq!(r, pos);
            }
        }
    }

    #[test]
    fn kostant_examples() {
        let cd = a2();
        assert_eq!(cd.kostant_partition(&RootVector(vec![1, 1])), 2);
        assert_eq!(cd.kostant_partition(&RootVector(vec![0, 0])), 1);
        assert_eq!(cd.kostant_partition(&RootVector(vec![2, 2])), 3);
        assert_eq!(cd.kostant_partition(&RootVector(vec![-1, 2])), 0);
    }

    /// Coefficient extraction from the truncated product of (1 - x^β)^{-1}.
    fn kostant_by_product(cd: &CartanData, bound: &RootVector) -> HashMap<RootVector, u64> {
        let mut series: HashMap<RootVector, u64> = HashMap::from([(RootVector::zero(cd.rank()), 1)]);
        for beta in cd.positive_roots() {
            let mut next: HashMap<RootVector, u64> = HashMap::new();
            for (mono, c) in &series {
                let mut m = mono.clone();
                while m.le(bound) {
                    *next.entry(m.clone()).or_default() += c;
                    m = m.add(&beta);
                }
            }
            series = next;
        }
        series
    }

    #[test]
    fn kostant_matches_product_formula() {
        for (name, bound) in [("A2", vec![4, 4]), ("A3", vec![3, 3, 3]), ("B2", vec![3, 4]), ("D4", vec![2, 2, 2, 2])] {
            let cd = CartanData::parse(name).unwrap();
            let b = RootVector(bound);
            let table = kostant_by_product(&cd, &b);
            for (nu, count) in table {
                assert_eq!(cd.kostant_partition(&nu), count, "{name} {nu}");
            }
        }
    }

    #[test]
    fn star_involution_type_a() {
        assert_eq!(CartanData::parse("A3").unwrap().star_involution(), vec![2, 1, 0]);
        assert_eq!(CartanData::parse("D4").unwrap().star_involution(), vec![0, 1, 2, 3]);
        assert_eq!(CartanData::parse("D5").unwrap().star_involution(), vec![0, 1, 2, 4, 3]);
    }

    #[test]
    fn weyl_group_orders() {
        for (name, order) in [("A1", 2), ("A2", 6), ("A3", 24), ("B2", 8), ("G2", 12), ("D4", 192)] {
            assert_eq!(CartanData::parse(name).unwrap().weyl_group().len(), order, "{name}");
        }
    }

    #[test]
    fn weight_root_conversion() {
        let cd = a2();
        let nu = RootVector(vec![2, 1]);
        let w = cd.root_to_weight(&nu);
        assert_eq!(w, Weight(vec![3, 0]));
        assert_eq!(cd.weight_to_root(&w), Some(nu));
        assert_eq!(cd.weight_to_root(&Weight(vec![1, 0])), None);
    }
}
