//! The crystal B(∞) of a simply-laced root system through Lusztig data.
//!
//! Elements are stored as Lusztig data against the lexicographically least
//! reduced word for w0. Changing words composes rank-two moves: a
//! commutation swaps two entries, and the A2 move sends `(a, b, c)` to
//! `(b + c - m, m, a + b - m)` with `m = min(a, c)`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::polytope::{hull, LatticePolytope};
use crate::rootdata::{CartanData, ReducedWord, RootVector, Weight, MAX_WORD_RANK};
use crate::{Error, Result};

/// Schema tag written into JSON exports of crystal graphs.
pub const GRAPH_SCHEMA: &str = "biperfect.crystal-graph.v1";

/// A reduced word for w0 with a vector of multiplicities, one per letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LusztigDatum {
    pub word: ReducedWord,
    pub coords: Vec<u64>,
}

impl fmt::Display for LusztigDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.word, fmt_coords(&self.coords))
    }
}

fn fmt_coords(c: &[u64]) -> String {
    let parts: Vec<String> = c.iter().map(u64::to_string).collect();
    format!("({})", parts.join(","))
}

/// An element of B(∞), stored as its datum for the reference word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BinfElement(pub Vec<u64>);

impl fmt::Display for BinfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_coords(&self.0))
    }
}

/// Apply the braid or commutation move starting at position `k`.
fn apply_move(cartan: &CartanData, word: &mut [usize], coords: &mut [u64], k: usize) {
    let (i, j) = (word[k], word[k + 1]);
    if cartan.entry(i, j) == 0 {
        word.swap(k, k + 1);
        coords.swap(k, k + 1);
    } else {
        debug_assert_eq!(word[k + 2], i);
        let (a, b, c) = (coords[k], coords[k + 1], coords[k + 2]);
        let m = a.min(c);
        coords[k] = b + c - m;
        coords[k + 1] = m;
        coords[k + 2] = a + b - m;
        word[k] = j;
        word[k + 1] = i;
        word[k + 2] = j;
    }
}

/// Positions of braid moves available in `word`.
fn move_positions(cartan: &CartanData, word: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for k in 0..word.len().saturating_sub(1) {
        let (i, j) = (word[k], word[k + 1]);
        if i == j {
            continue;
        }
        match cartan.entry(i, j) {
            0 => out.push(k),
            -1 if k + 2 < word.len() && word[k + 2] == i => out.push(k),
            _ => {}
        }
    }
    out
}

/// The crystal B(∞) for a fixed simply-laced Cartan datum.
#[derive(Clone, Debug)]
pub struct Binf {
    cartan: CartanData,
    reference: ReducedWord,
    roots: Vec<RootVector>,
    /// Braid-graph spanning tree rooted at the reference word, BFS order:
    /// `(word, parent index, move position in the parent)`.
    tree: Vec<(ReducedWord, usize, usize)>,
    index: HashMap<ReducedWord, usize>,
    /// For each i, the tree index of the least word starting with i.
    start_words: Vec<usize>,
    /// Tree index of `(σ(i_m), …, σ(i_1))` for the reference word.
    star_word: usize,
}

impl Binf {
    pub fn new(cartan: &CartanData) -> Result<Self> {
        if !cartan.is_simply_laced() {
            return Err(Error::NotSimplyLaced(cartan.name().to_string()));
        }
        if cartan.rank() > MAX_WORD_RANK {
            return Err(Error::RankTooLarge { rank: cartan.rank(), bound: MAX_WORD_RANK, what: "crystal B(∞)" });
        }
        let reference = cartan.longest_word();
        let roots = cartan.word_roots(&reference)?;
        let mut tree = vec![(reference.clone(), 0, 0)];
        let mut index = HashMap::new();
        index.insert(reference.clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(t) = queue.pop_front() {
            let word = tree[t].0.clone();
            for k in move_positions(cartan, &word.0) {
                let mut w = word.0.clone();
                let mut dummy = vec![0; w.len()];
                apply_move(cartan, &mut w, &mut dummy, k);
                let w = ReducedWord(w);
                if !index.contains_key(&w) {
                    index.insert(w.clone(), tree.len());
                    queue.push_back(tree.len());
                    tree.push((w, t, k));
                }
            }
        }
        let mut start_words = Vec::new();
        for i in 0..cartan.rank() {
            let best = tree
                .iter()
                .enumerate()
                .filter(|(_, (w, _, _))| w.0.first() == Some(&i))
                .min_by(|a, b| a.1 .0.cmp(&b.1 .0))
                .map(|(t, _)| t)
                .expect("w0 has a reduced word starting with each letter");
            start_words.push(best);
        }
        let sigma = cartan.star_involution();
        let star = ReducedWord(reference.0.iter().rev().map(|&i| sigma[i]).collect());
        let star_word = index[&star];
        Ok(Binf { cartan: cartan.clone(), reference, roots, tree, index, start_words, star_word })
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn reference_word(&self) -> &ReducedWord {
        &self.reference
    }

    /// All reduced words of w0 in breadth-first order from the reference.
    pub fn words(&self) -> impl Iterator<Item = &ReducedWord> {
        self.tree.iter().map(|(w, _, _)| w)
    }

    pub fn num_positive_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn highest(&self) -> BinfElement {
        BinfElement(vec![0; self.roots.len()])
    }

    fn path_from_reference(&self, mut t: usize) -> Vec<usize> {
        let mut path = Vec::new();
        while t != 0 {
            path.push(self.tree[t].2);
            t = self.tree[t].1;
        }
        path.reverse();
        path
    }

    fn tree_index(&self, word: &ReducedWord) -> Result<usize> {
        self.index.get(word).copied().ok_or_else(|| Error::NotLongestWord(word.one_based()))
    }

    /// Datum of `b` with respect to an arbitrary reduced word of w0.
    pub fn datum(&self, b: &BinfElement, word: &ReducedWord) -> Result<LusztigDatum> {
        let t = self.tree_index(word)?;
        Ok(self.datum_at(b, t))
    }

    fn datum_at(&self, b: &BinfElement, t: usize) -> LusztigDatum {
        let mut w = self.reference.0.clone();
        let mut c = b.0.clone();
        for k in self.path_from_reference(t) {
            apply_move(&self.cartan, &mut w, &mut c, k);
        }
        debug_assert_eq!(w, self.tree[t].0 .0);
        LusztigDatum { word: ReducedWord(w), coords: c }
    }

    /// Element with the given datum.
    pub fn from_datum(&self, d: &LusztigDatum) -> Result<BinfElement> {
        let t = self.tree_index(&d.word)?;
        if d.coords.len() != self.roots.len() {
            return Err(Error::DimensionMismatch { expected: self.roots.len(), got: d.coords.len() });
        }
        let mut w = d.word.0.clone();
        let mut c = d.coords.clone();
        for k in self.path_from_reference(t).into_iter().rev() {
            apply_move(&self.cartan, &mut w, &mut c, k);
        }
        Ok(BinfElement(c))
    }

    /// Re-express a datum in another reduced word.
    pub fn transition(&self, d: &LusztigDatum, target: &ReducedWord) -> Result<LusztigDatum> {
        let b = self.from_datum(d)?;
        self.datum(&b, target)
    }

    /// ν with wt(b) = −ν, in simple-root coordinates.
    pub fn nu(&self, b: &BinfElement) -> RootVector {
        let mut nu = RootVector::zero(self.cartan.rank());
        for (c, beta) in b.0.iter().zip(&self.roots) {
            nu = nu.add(&beta.scale(*c as i64));
        }
        nu
    }

    /// wt(b) = −ν in fundamental-weight coordinates.
    pub fn wt(&self, b: &BinfElement) -> Weight {
        self.cartan.root_to_weight(&self.nu(b)).neg()
    }

    fn check(&self, i: usize) -> Result<()> {
        self.cartan.check_index(i)
    }

    pub fn epsilon(&self, b: &BinfElement, i: usize) -> Result<u64> {
        self.check(i)?;
        Ok(self.datum_at(b, self.start_words[i]).coords[0])
    }

    fn shift_first(&self, b: &BinfElement, i: usize, up: bool) -> Result<Option<BinfElement>> {
        self.check(i)?;
        let mut d = self.datum_at(b, self.start_words[i]);
        if up {
            d.coords[0] += 1;
        } else if d.coords[0] == 0 {
            return Ok(None);
        } else {
            d.coords[0] -= 1;
        }
        self.from_datum(&d).map(Some)
    }

    /// ẽ_i, or `None` when ε_i(b) = 0.
    pub fn e_tilde(&self, b: &BinfElement, i: usize) -> Result<Option<BinfElement>> {
        self.shift_first(b, i, false)
    }

    pub fn f_tilde(&self, b: &BinfElement, i: usize) -> Result<BinfElement> {
        Ok(self.shift_first(b, i, true)?.expect("f̃_i is always defined"))
    }

    /// Kashiwara involution: the datum of b* for a word `(i_1, …, i_m)` is
    /// the reversed datum of b for `(σ(i_m), …, σ(i_1))`.
    pub fn star(&self, b: &BinfElement) -> BinfElement {
        let mut c = self.datum_at(b, self.star_word).coords;
        c.reverse();
        BinfElement(c)
    }

    pub fn epsilon_star(&self, b: &BinfElement, i: usize) -> Result<u64> {
        self.epsilon(&self.star(b), i)
    }

    pub fn e_star(&self, b: &BinfElement, i: usize) -> Result<Option<BinfElement>> {
        Ok(self.e_tilde(&self.star(b), i)?.map(|x| self.star(&x)))
    }

    pub fn f_star(&self, b: &BinfElement, i: usize) -> Result<BinfElement> {
        Ok(self.star(&self.f_tilde(&self.star(b), i)?))
    }

    pub fn epsilons(&self, b: &BinfElement) -> Vec<u64> {
        (0..self.cartan.rank()).map(|i| self.epsilon(b, i).expect("index in range")).collect()
    }

    pub fn epsilon_stars(&self, b: &BinfElement) -> Vec<u64> {
        let s = self.star(b);
        self.epsilons(&s)
    }

    /// MV polytope of b: the hull of the points `ν − Σ_{k≤j} c_k β_k` along
    /// every reduced word, so the path runs from ν down to 0.
    pub fn mv_polytope(&self, b: &BinfElement) -> Result<MvPolytope> {
        let nu = self.nu(b);
        let rho = self.cartan.rho();
        let mut chamber_points: BTreeMap<Weight, RootVector> = BTreeMap::new();
        for t in 0..self.tree.len() {
            let d = self.datum_at(b, t);
            let roots = self.cartan.word_roots(&d.word)?;
            let mut point = nu.clone();
            for j in 0..=d.word.len() {
                let chamber = self.cartan.apply_word_to_weight(&d.word.0[..j], &rho);
                match chamber_points.get(&chamber) {
                    Some(p) if *p != point => {
                        return Err(Error::Inconsistent(format!(
                            "chamber {:?} has points {} and {}",
                            chamber.0, p, point
                        )))
                    }
                    Some(_) => {}
                    None => {
                        chamber_points.insert(chamber, point.clone());
                    }
                }
                if j < d.word.len() {
                    point = point.sub(&roots[j].scale(d.coords[j] as i64));
                }
            }
        }
        let pts: Vec<RootVector> = chamber_points.values().cloned().collect();
        Ok(MvPolytope { nu, polytope: hull(&pts)?, chamber_points })
    }

    /// All elements with height(ν) ≤ depth, closed under f̃_i from the
    /// highest element.
    pub fn enumerate(&self, depth: usize) -> Result<CrystalGraph> {
        let mut levels: Vec<Vec<BinfElement>> = vec![vec![self.highest()]];
        for _ in 0..depth {
            let mut next: Vec<BinfElement> = Vec::new();
            for b in levels.last().unwrap() {
                for i in 0..self.cartan.rank() {
                    next.push(self.f_tilde(b, i)?);
                }
            }
            next.sort();
            next.dedup();
            levels.push(next);
        }
        let mut nodes = Vec::new();
        for level in &levels {
            for b in level {
                nodes.push(NodeInfo {
                    element: b.clone(),
                    nu: self.nu(b),
                    epsilon: self.epsilons(b),
                    epsilon_star: self.epsilon_stars(b),
                });
            }
        }
        let pos: HashMap<BinfElement, usize> = nodes.iter().enumerate().map(|(k, n)| (n.element.clone(), k)).collect();
        let mut edges = Vec::new();
        for (k, n) in nodes.iter().enumerate() {
            for i in 0..self.cartan.rank() {
                if let Some(up) = self.e_tilde(&n.element, i)? {
                    edges.push(Edge { from: k, to: pos[&up], label: i, star: false });
                }
                if let Some(up) = self.e_star(&n.element, i)? {
                    edges.push(Edge { from: k, to: pos[&up], label: i, star: true });
                }
            }
        }
        Ok(CrystalGraph { cartan: self.cartan.name().to_string(), reference: self.reference.clone(), nodes, edges })
    }

    /// Elements of B(λ) inside an enumerated graph: ε_i*(b) ≤ ⟨α_i^∨, λ⟩.
    pub fn b_lambda(&self, graph: &CrystalGraph, lambda: &Weight) -> Result<Vec<usize>> {
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.0.clone()));
        }
        if lambda.rank() != self.cartan.rank() {
            return Err(Error::DimensionMismatch { expected: self.cartan.rank(), got: lambda.rank() });
        }
        Ok(graph
            .nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.epsilon_star.iter().zip(&lambda.0).all(|(&e, &l)| e as i64 <= l))
            .map(|(k, _)| k)
            .collect())
    }
}

impl Binf {
    /// All elements with the given ν, in increasing datum order.
    pub fn elements_of_weight(&self, nu: &RootVector) -> Vec<BinfElement> {
        let mut out = Vec::new();
        let mut coords = vec![0u64; self.roots.len()];
        self.fill(0, nu, &mut coords, &mut out);
        out.sort();
        out
    }

    fn fill(&self, k: usize, rest: &RootVector, coords: &mut Vec<u64>, out: &mut Vec<BinfElement>) {
        if k == self.roots.len() {
            if rest.is_zero() {
                out.push(BinfElement(coords.clone()));
            }
            return;
        }
        let mut r = rest.clone();
        let mut c = 0;
        while r.is_nonnegative() {
            coords[k] = c;
            self.fill(k + 1, &r, coords, out);
            r = r.sub(&self.roots[k]);
            c += 1;
        }
        coords[k] = 0;
    }

    /// `dim V(λ)_μ` as `#{b : ν(b) = λ − μ, ε_i*(b) ≤ ⟨α_i^∨, λ⟩}`.
    pub fn weight_multiplicity(&self, lambda: &Weight, mu: &Weight) -> Result<u64> {
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.0.clone()));
        }
        let Some(nu) = self.cartan.weight_to_root(&lambda.sub(mu)) else { return Ok(0) };
        if !nu.is_nonnegative() {
            return Ok(0);
        }
        Ok(self
            .elements_of_weight(&nu)
            .iter()
            .filter(|b| self.epsilon_stars(b).iter().zip(&lambda.0).all(|(&e, &l)| e as i64 <= l))
            .count() as u64)
    }

    /// `c^ν_{λμ}` as the number of b with `wt(b) = ν − λ − μ`,
    /// `ε_i(b) ≤ ⟨α_i^∨, μ⟩` and `ε_i*(b) ≤ ⟨α_i^∨, λ⟩`.
    pub fn tensor_multiplicity(&self, lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<u64> {
        for w in [lambda, mu, nu] {
            if !w.is_dominant() {
                return Err(Error::NotDominant(w.0.clone()));
            }
        }
        let Some(root) = self.cartan.weight_to_root(&lambda.add(mu).sub(nu)) else { return Ok(0) };
        if !root.is_nonnegative() {
            return Ok(0);
        }
        Ok(self
            .elements_of_weight(&root)
            .iter()
            .filter(|b| {
                self.epsilons(b).iter().zip(&mu.0).all(|(&e, &m)| e as i64 <= m)
                    && self.epsilon_stars(b).iter().zip(&lambda.0).all(|(&e, &l)| e as i64 <= l)
            })
            .count() as u64)
    }
}

/// MV polytope with its distinguished vertices: `chamber_points[w·ρ]` is
/// the point reached after the prefix `w` of a reduced word, so the key ρ
/// carries ν and the key `w0·ρ = −ρ*` carries 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MvPolytope {
    pub nu: RootVector,
    pub polytope: LatticePolytope,
    pub chamber_points: BTreeMap<Weight, RootVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeInfo {
    pub element: BinfElement,
    pub nu: RootVector,
    pub epsilon: Vec<u64>,
    pub epsilon_star: Vec<u64>,
}

/// Edge `from → to` with `to = ẽ_label(from)` (or ẽ*_label when `star`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: usize,
    pub star: bool,
}

/// Finite truncation of B(∞), nodes ordered by height then datum.
#[derive(Clone, Debug)]
pub struct CrystalGraph {
    pub cartan: String,
    pub reference: ReducedWord,
    pub nodes: Vec<NodeInfo>,
    pub edges: Vec<Edge>,
}

impl CrystalGraph {
    pub fn level_sizes(&self) -> Vec<usize> {
        let mut sizes = Vec::new();
        for n in &self.nodes {
            let h = n.nu.height() as usize;
            if sizes.len() <= h {
                sizes.resize(h + 1, 0);
            }
            sizes[h] += 1;
        }
        sizes
    }

    fn edge_label(e: &Edge) -> String {
        if e.star {
            format!("e{}*", e.label + 1)
        } else {
            format!("e{}", e.label + 1)
        }
    }

    /// Graphviz export; `with_star` includes ẽ_i* edges.
    pub fn to_dot(&self, with_star: bool) -> String {
        let mut s = format!("digraph binf_{} {{\n", self.cartan.replace(|c: char| !c.is_alphanumeric(), "_"));
        let id = |k: usize| {
            let d: Vec<String> = self.nodes[k].element.0.iter().map(u64::to_string).collect();
            format!("b_{}", d.join("_"))
        };
        for (k, n) in self.nodes.iter().enumerate() {
            s.push_str(&format!("  {} [label=\"{}\"];\n", id(k), n.element));
        }
        for e in self.edges.iter().filter(|e| with_star || !e.star) {
            let style = if e.star { ", style=dashed" } else { "" };
            s.push_str(&format!("  {} -> {} [label=\"{}\"{style}];\n", id(e.from), id(e.to), Self::edge_label(e)));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let nodes: Vec<serde_json::Value> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(k, n)| {
                json!({
                    "id": k,
                    "datum": n.element.0,
                    "nu": n.nu.0,
                    "epsilon": n.epsilon,
                    "epsilon_star": n.epsilon_star,
                })
            })
            .collect();
        let edges: Vec<serde_json::Value> = self
            .edges
            .iter()
            .map(|e| json!({"from": e.from, "to": e.to, "label": Self::edge_label(e)}))
            .collect();
        json!({
            "schema": GRAPH_SCHEMA,
            "cartan": self.cartan,
            "reference_word": self.reference.one_based(),
            "level_sizes": self.level_sizes(),
            "nodes": nodes,
            "edges": edges,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Binf {
        Binf::new(&CartanData::type_a(2)).unwrap()
    }

    fn word(letters: &[usize]) -> ReducedWord {
        ReducedWord::from_one_based(letters)
    }

    #[test]
    fn anchored_transition() {
        let b = a2();
        let d = LusztigDatum { word: word(&[1, 2, 1]), coords: vec![3, 2, 1] };
        let t = b.transition(&d, &word(&[2, 1, 2])).unwrap();
        assert_eq!(t.coords, vec![2, 1, 4]);
        assert_eq!(b.transition(&d, &d.word).unwrap(), d);
        let back = b.transition(&t, &d.word).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn first_steps() {
        let b = a2();
        let h = b.highest();
        assert_eq!(b.epsilon(&h, 0).unwrap(), 0);
        assert!(b.e_tilde(&h, 0).unwrap().is_none());
        let f = b.f_tilde(&h, 0).unwrap();
        assert_eq!(f.0, vec![1, 0, 0]);
        assert_eq!(b.epsilon(&f, 0).unwrap(), 1);
        assert_eq!(b.star(&h), h);
    }

    #[test]
    fn level_sizes_a2() {
        let b = a2();
        let g = b.enumerate(4).unwrap();
        assert_eq!(g.level_sizes(), vec![1, 2, 4, 6, 9]);
    }

    #[test]
    fn non_simply_laced_refused() {
        let b2 = CartanData::parse("B2").unwrap();
        assert!(matches!(Binf::new(&b2), Err(Error::NotSimplyLaced(_))));
    }

    #[test]
    fn hexagon() {
        let b = a2();
        let el = b.from_datum(&LusztigDatum { word: word(&[1, 2, 1]), coords: vec![3, 2, 1] }).unwrap();
        let mv = b.mv_polytope(&el).unwrap();
        let mut expect: Vec<RootVector> =
            [[5, 3], [2, 3], [0, 1], [0, 0], [4, 0], [5, 1]].iter().map(|v| RootVector(v.to_vec())).collect();
        expect.sort();
        assert_eq!(mv.polytope.vertices(), expect.as_slice());
        assert_eq!(mv.chamber_points[&b.cartan().rho()], RootVector(vec![5, 3]));
        assert_eq!(mv.chamber_points[&b.cartan().rho().neg()], RootVector(vec![0, 0]));
    }

    #[test]
    fn dot_and_json_exports() {
        let g = a2().enumerate(1).unwrap();
        let dot = g.to_dot(false);
        assert!(dot.contains("label=\"e1\""));
        assert!(dot.contains("label=\"e2\""));
        assert!(!dot.contains("e1*"));
        assert!(dot.contains("b_1_0_0 -> b_0_0_0 [label=\"e1\"]"));
        let js = g.to_json();
        assert_eq!(js["schema"], GRAPH_SCHEMA);
        assert_eq!(js["nodes"].as_array().unwrap().len(), 3);
    }
}
