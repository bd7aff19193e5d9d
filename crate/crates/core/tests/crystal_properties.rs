use std::collections::BTreeMap;

use biperfect::crystal::{Binf, BinfElement, LusztigDatum};
use biperfect::rootdata::{CartanData, RootVector, Weight};

fn cartans() -> Vec<(CartanData, usize)> {
    vec![
        (CartanData::type_a(2), 5),
        (CartanData::type_a(3), 4),
        (CartanData::parse("A1xA1").unwrap(), 4),
    ]
}

fn elements(b: &Binf, depth: usize) -> Vec<BinfElement> {
    b.enumerate(depth).unwrap().nodes.into_iter().map(|n| n.element).collect()
}

#[test]
fn raising_inverts_lowering() {
    for (c, depth) in cartans() {
        let b = Binf::new(&c).unwrap();
        for el in elements(&b, depth) {
            for i in 0..c.rank() {
                let f = b.f_tilde(&el, i).unwrap();
                assert_eq!(b.e_tilde(&f, i).unwrap().as_ref(), Some(&el));
                assert_eq!(b.epsilon(&f, i).unwrap(), b.epsilon(&el, i).unwrap() + 1);
                assert_eq!(b.nu(&f), b.nu(&el).add(&c.simple_root(i)));
                if let Some(e) = b.e_tilde(&el, i).unwrap() {
                    assert_eq!(b.epsilon(&e, i).unwrap() + 1, b.epsilon(&el, i).unwrap());
                }
            }
        }
    }
}

#[test]
fn star_is_weight_preserving_involution() {
    for (c, depth) in cartans() {
        let b = Binf::new(&c).unwrap();
        let depth = if c.rank() == 2 { 6 } else { depth };
        for el in elements(&b, depth) {
            let s = b.star(&el);
            assert_eq!(b.star(&s), el);
            assert_eq!(b.nu(&s), b.nu(&el));
            assert_eq!(b.epsilons(&s), b.epsilon_stars(&el));
        }
    }
}

#[test]
fn lowering_and_star_lowering_commute_for_distinct_indices() {
    for (c, depth) in cartans() {
        let b = Binf::new(&c).unwrap();
        for el in elements(&b, depth - 1) {
            for i in 0..c.rank() {
                for j in 0..c.rank() {
                    let a = b.f_star(&b.f_tilde(&el, i).unwrap(), j).unwrap();
                    let z = b.f_tilde(&b.f_star(&el, j).unwrap(), i).unwrap();
                    if i != j {
                        assert_eq!(a, z, "i={i} j={j} b={el}");
                    }
                }
            }
        }
    }
}

#[test]
fn string_inequality_holds() {
    // ⟨α_i^∨, wt b⟩ + ε_i(b) + ε_i*(b) ≥ 0 on B(∞)
    for (c, depth) in cartans() {
        let b = Binf::new(&c).unwrap();
        for el in elements(&b, depth) {
            let wt = b.wt(&el);
            for i in 0..c.rank() {
                let s = wt.0[i] + b.epsilon(&el, i).unwrap() as i64 + b.epsilon_star(&el, i).unwrap() as i64;
                assert!(s >= 0);
            }
        }
    }
}

#[test]
fn level_sizes_match_kostant_partitions() {
    for (c, depth) in cartans() {
        let b = Binf::new(&c).unwrap();
        let g = b.enumerate(depth).unwrap();
        let mut by_weight: BTreeMap<RootVector, u64> = BTreeMap::new();
        for n in &g.nodes {
            *by_weight.entry(n.nu.clone()).or_default() += 1;
        }
        for (nu, count) in by_weight {
            assert_eq!(count, c.kostant_partition(&nu), "nu = {nu}");
        }
    }
}

#[test]
fn transitions_are_path_independent() {
    // Checking every braid edge against the spanning-tree data makes every
    // cycle of moves commute.
    for c in [CartanData::type_a(2), CartanData::type_a(3)] {
        let b = Binf::new(&c).unwrap();
        let m = b.num_positive_roots();
        let mut coords = vec![0u64; m];
        let mut samples = Vec::new();
        loop {
            samples.push(BinfElement(coords.clone()));
            let mut k = 0;
            while k < m {
                coords[k] += 1;
                if coords[k] <= if m == 3 { 3 } else { 1 } {
                    break;
                }
                coords[k] = 0;
                k += 1;
            }
            if k == m {
                break;
            }
        }
        let words: Vec<_> = b.words().cloned().collect();
        for el in &samples {
            for w in &words {
                let d = b.datum(el, w).unwrap();
                for w2 in c.braid_neighbors(w) {
                    let direct = b.transition(&d, &w2).unwrap();
                    assert_eq!(b.from_datum(&direct).unwrap(), *el);
                    let nu: RootVector = c
                        .word_roots(&w2)
                        .unwrap()
                        .iter()
                        .zip(&direct.coords)
                        .fold(RootVector::zero(c.rank()), |acc, (r, &k)| acc.add(&r.scale(k as i64)));
                    assert_eq!(nu, b.nu(el));
                }
            }
        }
    }
}

#[test]
fn a2_move_with_equal_ends_is_involutive() {
    let b = Binf::new(&CartanData::type_a(2)).unwrap();
    let w121 = biperfect::rootdata::ReducedWord::from_one_based(&[1, 2, 1]);
    let w212 = biperfect::rootdata::ReducedWord::from_one_based(&[2, 1, 2]);
    for a in 0..4 {
        for bb in 0..4 {
            let d = LusztigDatum { word: w121.clone(), coords: vec![a, bb, a] };
            let t = b.transition(&d, &w212).unwrap();
            assert_eq!(t.coords, vec![bb, a, bb]);
            let t2 = LusztigDatum { word: w121.clone(), coords: t.coords.clone() };
            assert_eq!(b.transition(&t2, &w212).unwrap().coords, d.coords);
        }
    }
}

#[test]
fn mv_polytopes_agree_across_words_and_encode_data() {
    for (c, depth) in [(CartanData::type_a(2), 5), (CartanData::type_a(3), 3)] {
        let b = Binf::new(&c).unwrap();
        for el in elements(&b, depth) {
            let mv = b.mv_polytope(&el).unwrap();
            for w in b.words() {
                let d = b.datum(&el, w).unwrap();
                let roots = c.word_roots(w).unwrap();
                let rho = c.rho();
                let mut point = mv.nu.clone();
                for j in 0..w.len() {
                    let key = c.apply_word_to_weight(&w.0[..j], &rho);
                    assert_eq!(mv.chamber_points[&key], point);
                    let next = mv.chamber_points[&c.apply_word_to_weight(&w.0[..=j], &rho)].clone();
                    let edge = point.sub(&next);
                    let k = d.coords[j] as i64;
                    assert_eq!(edge, roots[j].scale(k));
                    point = next;
                }
                assert!(point.is_zero());
                for v in mv.polytope.vertices() {
                    assert!(mv.chamber_points.values().any(|p| p == v));
                }
            }
        }
    }
}

#[test]
fn b_lambda_for_first_fundamental_weight() {
    let c = CartanData::type_a(2);
    let b = Binf::new(&c).unwrap();
    let g = b.enumerate(4).unwrap();
    let nodes = b.b_lambda(&g, &Weight(vec![1, 0])).unwrap();
    let mut nus: Vec<RootVector> = nodes.iter().map(|&k| g.nodes[k].nu.clone()).collect();
    nus.sort();
    assert_eq!(nus, vec![RootVector(vec![0, 0]), RootVector(vec![1, 0]), RootVector(vec![1, 1])]);
}

fn dominant_grid(rank: usize, max: i64) -> Vec<Weight> {
    let mut out = vec![Weight(vec![0; rank])];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|w| (0..=max).map(move |c| {
                let mut v = w.0.clone();
                v.push(c);
                Weight(v)
            }))
            .collect();
    }
    out.into_iter().map(|w| Weight(w.0[rank..].to_vec())).collect()
}

#[test]
fn weight_multiplicities_match_kostant_formula() {
    use biperfect::repcheck::oracle;
    let c = CartanData::type_a(2);
    let b = Binf::new(&c).unwrap();
    for lambda in dominant_grid(2, 2) {
        for (mu, m) in oracle::character(&c, &lambda) {
            assert_eq!(b.weight_multiplicity(&lambda, &mu).unwrap(), m, "{lambda:?} {mu:?}");
        }
    }
}
