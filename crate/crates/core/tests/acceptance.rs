//! Acceptance suite: every criterion runs, prints one PASS/FAIL line with
//! its timing against the budget, and the test fails if any criterion does.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use biperfect::coordring::{self, box_weights, BasisCrystal, CoordRing, Sides};
use biperfect::crystal::{Binf, BinfElement, LusztigDatum};
use biperfect::measures::{self, support_hull, Measures};
use biperfect::preproj::{fixtures, ModuleField, PPModule};
use biperfect::repcheck::{self, oracle};
use biperfect::rootdata::{CartanData, ReducedWord, RootVector, Weight};
use biperfect::symbolic::{ExpSum, MultiPoly, RationalFn};
use biperfect::{rat, ratio, Rational};

type Outcome = Result<String, String>;

struct Line {
    number: usize,
    name: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
    budget: Duration,
}

fn criterion(lines: &mut Vec<Line>, number: usize, name: &'static str, budget: Duration, f: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let (ok, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    let in_budget = elapsed <= budget;
    let detail = if in_budget { detail } else { format!("{detail}; over budget") };
    let line = Line { number, name, passed: ok && in_budget, detail, elapsed, budget };
    println!(
        "[{}] {:>2}. {} ({:.3?} / budget {:?}): {}",
        if line.passed { "PASS" } else { "FAIL" },
        line.number,
        line.name,
        line.elapsed,
        line.budget,
        line.detail
    );
    lines.push(line);
}

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn a2() -> CartanData {
    CartanData::type_a(2)
}

/// Dominant ν with λ + μ − ν in Q_+.
fn tensor_targets(c: &CartanData, lam: &Weight, mu: &Weight) -> Vec<Weight> {
    let top = lam.add(mu);
    let bound: i64 = top.0.iter().sum::<i64>() * 2 + 2;
    let mut out = Vec::new();
    let r = c.rank();
    let mut nu = vec![0i64; r];
    loop {
        let w = Weight(nu.clone());
        if let Some(d) = c.weight_to_root(&top.sub(&w)) {
            if d.is_nonnegative() {
                out.push(w);
            }
        }
        let mut k = 0;
        loop {
            if k == r {
                return out;
            }
            nu[k] += 1;
            if nu[k] <= bound {
                break;
            }
            nu[k] = 0;
            k += 1;
        }
    }
}

fn shuffles(a: &[usize], b: &[usize]) -> Vec<Vec<usize>> {
    if a.is_empty() {
        return vec![b.to_vec()];
    }
    if b.is_empty() {
        return vec![a.to_vec()];
    }
    let mut out = Vec::new();
    for mut s in shuffles(&a[1..], b) {
        s.insert(0, a[0]);
        out.push(s);
    }
    for mut s in shuffles(a, &b[1..]) {
        s.insert(0, b[0]);
        out.push(s);
    }
    out
}

fn words(letters: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 0..letters {
                let mut v: Vec<usize> = w.clone();
                v.push(i);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn c1() -> Outcome {
    let b = Binf::new(&a2()).map_err(e)?;
    let d = LusztigDatum { word: ReducedWord::from_one_based(&[1, 2, 1]), coords: vec![3, 2, 1] };
    let t = b.transition(&d, &ReducedWord::from_one_based(&[2, 1, 2])).map_err(e)?;
    check(t.coords == vec![2, 1, 4], format!("got {t}"))?;
    let back = b.transition(&t, &ReducedWord::from_one_based(&[1, 2, 1])).map_err(e)?;
    check(back == d, format!("back {back}"))?;
    Ok(format!("{d} -> {t} -> {back}"))
}

fn c2() -> Outcome {
    let c = a2();
    let g = Binf::new(&c).map_err(e)?.enumerate(4).map_err(e)?;
    let sizes = g.level_sizes();
    let kostant: Vec<usize> = (0..=4)
        .map(|h| box_weights(2, h).iter().filter(|w| w.height() == h).map(|w| c.kostant_partition(w) as usize).sum())
        .collect();
    check(sizes == vec![1, 2, 4, 6, 9], format!("levels {sizes:?}"))?;
    check(sizes == kostant, format!("Kostant {kostant:?}"))?;
    Ok(format!("levels {sizes:?} = Kostant {kostant:?}"))
}

fn c3() -> Outcome {
    let family = coordring::sl3_basis(6);
    let report = coordring::verify_biperfect(&family).map_err(e)?;
    check(report.passed(), format!("{} failures, first {:?}", report.failures.len(), report.failures.first()))?;
    check(report.certified_residuals > 0, "no residuals certified")?;
    Ok(format!(
        "{} elements on {} weights, {} residual terms certified in ker e_i^(eps-1)",
        family.len(),
        report.weights_checked,
        report.certified_residuals
    ))
}

fn c4() -> Outcome {
    let family = coordring::sl3_basis(6);
    let report = coordring::verify_biperfect(&family).map_err(e)?;
    let crystal = BasisCrystal::from_report(&family, &report, 6).map_err(e)?;
    let binf = Binf::new(&a2()).map_err(e)?;
    let m = coordring::match_binf(&crystal, &binf, 2).map_err(e)?;
    check(m.count == 1, format!("{} bijections", m.count))?;
    Ok(format!("{} elements, levels {:?}, exactly one bijection", crystal.len(), crystal.level_sizes()))
}

fn c5() -> Outcome {
    let mut checked = 0;
    for (c, bound) in [(a2(), 2i64), (CartanData::type_a(3), 1)] {
        let binf = Binf::new(&c).map_err(e)?;
        let r = c.rank();
        let weights: Vec<Weight> = (0..(bound + 1).pow(r as u32))
            .map(|mut k| {
                Weight(
                    (0..r)
                        .map(|_| {
                            let d = k % (bound + 1);
                            k /= bound + 1;
                            d
                        })
                        .collect(),
                )
            })
            .collect();
        for lam in &weights {
            for mu in &weights {
                for nu in tensor_targets(&c, lam, mu) {
                    let got = binf.tensor_multiplicity(lam, mu, &nu).map_err(e)?;
                    let want = oracle::tensor_multiplicity(&c, lam, mu, &nu);
                    check(got == want, format!("{}: c^{:?}_{:?},{:?} = {got}, oracle {want}", c, nu.0, lam.0, mu.0))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} triples (A2 pairings <= 2, A3 pairings <= 1) agree with the oracle"))
}

fn c6() -> Outcome {
    let c = a2();
    let ws = [Weight(vec![1, 0]), Weight(vec![0, 1]), Weight(vec![1, 1])];
    let mut checked = 0;
    for lam in &ws {
        for mu in &ws {
            for nu in tensor_targets(&c, lam, mu) {
                let got = repcheck::multiplicity_space_dim(&c, lam, mu, &nu).map_err(e)? as u64;
                let want = oracle::tensor_multiplicity(&c, lam, mu, &nu);
                check(got == want, format!("c^{:?}_{:?},{:?}: kernel dim {got}, oracle {want}", nu.0, lam.0, mu.0))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} triples agree"))
}

fn c7() -> Outcome {
    let f = repcheck::force_sl3_adjoint().map_err(e)?;
    check(f.a == ratio(1, 3) && f.b == ratio(1, 3), format!("a = {}, b = {}", f.a, f.b))?;
    Ok(format!("a = {}, b = {}", f.a, f.b))
}

fn c8() -> Outcome {
    let ring = CoordRing::new(3).map_err(e)?;
    let u = coordring::uniqueness_search(&ring, 4, Sides::Both).map_err(e)?;
    check(u.unique(), format!("free weights {:?}", u.free_weights()))?;
    let found: BTreeSet<String> = u.polys().iter().map(|p| ring.to_text(p)).collect();
    let family: BTreeSet<String> = coordring::sl3_basis(4)
        .elements
        .iter()
        .filter(|el| el.weight.height() <= 4)
        .map(|el| ring.to_text(&el.poly))
        .collect();
    check(found == family, "solution differs from the explicit family")?;
    let left = coordring::uniqueness_search(&ring, 4, Sides::LeftOnly).map_err(e)?;
    Ok(format!(
        "{} elements, unique, equal to the explicit family; left-only search free weights {:?}",
        found.len(),
        left.free_weights()
    ))
}

fn c9() -> Outcome {
    let ring = CoordRing::new(3).map_err(e)?;
    let m = Measures::new(&ring);
    let ws = words(2, 5);
    let mut pairs = 0;
    for a in &ws {
        for b in &ws {
            if a.len() + b.len() > 5 {
                continue;
            }
            let sh = shuffles(a, b);
            let lhs = &m.ft_d_seq(a) * &m.ft_d_seq(b);
            let rhs = sh.iter().fold(ExpSum::zero(m.chart()), |acc, s| &acc + &m.ft_d_seq(s));
            check(lhs == rhs, format!("FT shuffle fails for {a:?}, {b:?}"))?;
            let lhs = &m.d_bar_seq(a) * &m.d_bar_seq(b);
            let rhs = sh.iter().fold(RationalFn::zero(2), |acc, s| &acc + &m.d_bar_seq(s));
            check(lhs == rhs, format!("Dbar shuffle fails for {a:?}, {b:?}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} sequence pairs, both D-bar and FT(D)"))
}

fn sl3_elements_of_degree(d: u32) -> Vec<coordring::FamilyElement> {
    coordring::sl3_basis(6).elements.into_iter().filter(|el| el.poly.total_degree().unwrap_or(0) <= d).collect()
}

fn c10() -> Outcome {
    let ring = CoordRing::new(3).map_err(e)?;
    let m = Measures::new(&ring);
    let els = sl3_elements_of_degree(4);
    let mut at_nx = 0;
    for el in &els {
        let r = m.morphism_check(&el.poly);
        check(r.zero_coefficient_matches(), format!("[e^0] FT(D) != Dbar for {}", el.label))?;
        check(r.d_bar_is_nx_inverse_value(), format!("Dbar != f(n_x^-1) for {}", el.label))?;
        if r.d_bar == r.at_nx {
            at_nx += 1;
        }
    }
    Ok(format!(
        "{} elements: [e^0] FT(D(f)) = Dbar(f) = f(n_x^-1); the literal f(n_x) agrees on {at_nx} (sign convention)",
        els.len()
    ))
}

fn c11() -> Outcome {
    for n in 2..=4 {
        let ring = CoordRing::new(n).map_err(e)?;
        let m = Measures::new(&ring);
        let nx = m.solve_nx();
        check(m.nx_residual(&nx).iter().flatten().all(RationalFn::is_zero), format!("Ad(n_x) x != x + e for n = {n}"))?;
    }
    let ring = CoordRing::new(3).map_err(e)?;
    let m = Measures::new(&ring);
    let mut polys: Vec<(String, MultiPoly)> =
        ["x", "y", "z"].iter().map(|v| (v.to_string(), ring.parse(v).unwrap())).collect();
    polys.extend(sl3_elements_of_degree(3).into_iter().map(|el| (el.label, el.poly)));
    for (label, f) in &polys {
        check(m.morphism_check(f).transform_matches(), format!("pullback != FT(D) for {label}"))?;
    }
    Ok(format!("Ad(n_x) x = x + e for n = 2,3,4; {} polynomials match", polys.len()))
}

fn c12() -> Outcome {
    let ma = fixtures::sl3_component_b_zero();
    let subs = ma.submodule_dimvectors().map_err(e)?;
    let want: BTreeSet<RootVector> = [vec![0, 0], vec![1, 0], vec![1, 1]].into_iter().map(RootVector).collect();
    check(subs == want, format!("submodules {subs:?}"))?;
    let hn = ma.hn_polytope().map_err(e)?;
    let tri = biperfect::polytope::hull(&want.iter().cloned().collect::<Vec<_>>()).map_err(e)?;
    check(hn.equals(&tri), format!("HN {hn}"))?;
    let ring = CoordRing::new(3).map_err(e)?;
    let xis: BTreeSet<String> = [ma.xi().map_err(e)?, fixtures::sl3_component_a_zero().xi().map_err(e)?]
        .iter()
        .map(|p| ring.to_text(p))
        .collect();
    let want_xi: BTreeSet<String> = ["z", "x*y - z"].iter().map(|s| ring.to_text(&ring.parse(s).unwrap())).collect();
    check(xis == want_xi, format!("xi {xis:?}"))?;
    let ring2 = CoordRing::new(2).map_err(e)?;
    for n in 1..=4u32 {
        let xi = fixtures::sl2_free(n as usize).xi().map_err(e)?;
        check(xi == ring2.var(0, 1).pow(n), format!("xi(k^{n}) = {}", ring2.to_text(&xi)))?;
    }
    Ok(format!("submodules {{0, a1, a1+a2}}, HN = triangle, xi = {xis:?}, xi(k^n) = x^n for n <= 4"))
}

fn c13() -> Outcome {
    let binf = Binf::new(&a2()).map_err(e)?;
    let fx = fixtures::sl3_generic_height_le3();
    for (name, m) in &fx {
        let b = m.match_crystal(&binf).map_err(|x| format!("{name}: {x}"))?;
        let mv = binf.mv_polytope(&b).map_err(e)?;
        let hn = m.hn_polytope().map_err(e)?;
        check(hn.equals(&mv.polytope), format!("{name}: HN {hn} vs MV {}", mv.polytope))?;
    }
    Ok(format!("{} fixtures", fx.len()))
}

fn small_modules() -> Vec<(String, PPModule)> {
    let mut out = fixtures::sl3_generic_height_le3();
    let c2 = a2();
    out.push(("S1+S2".to_string(), PPModule::semisimple(&c2, vec![1, 1]).unwrap()));
    out.push(("S1^2+S2".to_string(), PPModule::semisimple(&c2, vec![2, 1]).unwrap()));
    for n in 1..=3 {
        out.push((format!("k^{n} (A1)"), fixtures::sl2_free(n)));
    }
    let c3 = CartanData::type_a(3);
    let one = || vec![vec![rat(1)]];
    let chain =
        PPModule::new(&c3, vec![1, 1, 1], vec![((2, 1), one()), ((1, 0), one())], ModuleField::Rationals).unwrap();
    let vee =
        PPModule::new(&c3, vec![1, 1, 1], vec![((0, 1), one()), ((2, 1), one())], ModuleField::Rationals).unwrap();
    let scaled = PPModule::new(&c2, vec![1, 1], vec![((1, 0), vec![vec![ratio(3, 2)]])], ModuleField::Rationals).unwrap();
    out.push(("A3 chain 3->2->1".to_string(), chain));
    out.push(("A3 1->2<-3".to_string(), vee));
    out.push(("M(2->1) scaled 3/2".to_string(), scaled));
    out
}

fn c14() -> Outcome {
    let mut compared = 0;
    let mut modules = 0;
    for (name, m) in small_modules() {
        check(m.total_dim() <= 3, format!("{name} too large"))?;
        check(m.check_relation(), format!("{name} violates the relation"))?;
        modules += 1;
        for s in m.sequences() {
            let interp = m.chi_flag(&s).map_err(|x| format!("{name} {s:?}: {x}"))?;
            let direct = m.chi_flag_direct(&s).map_err(e)?.ok_or(format!("{name} {s:?}: no direct enumeration"))?;
            check(interp == direct as i64, format!("{name} {s:?}: interpolation {interp}, direct {direct}"))?;
            check(m.chi_flag_prime_independent(&s).map_err(e)?, format!("{name} {s:?}: prime-set dependence"))?;
            compared += 1;
        }
    }
    Ok(format!("{modules} modules, {compared} sequences; interpolation = direct, prime sets agree"))
}

fn c15() -> Outcome {
    // crystal axioms
    let mut n_axioms = 0;
    for (c, depth) in [(a2(), 5), (CartanData::type_a(3), 3)] {
        let binf = Binf::new(&c).map_err(e)?;
        let g = binf.enumerate(depth).map_err(e)?;
        for node in &g.nodes {
            let b = &node.element;
            for i in 0..c.rank() {
                let f = binf.f_tilde(b, i).map_err(e)?;
                check(binf.e_tilde(&f, i).map_err(e)?.as_ref() == Some(b), format!("e f != id at {b}"))?;
                check(binf.epsilon(&f, i).map_err(e)? == binf.epsilon(b, i).map_err(e)? + 1, "eps(f b) != eps(b) + 1")?;
                if let Some(up) = binf.e_tilde(b, i).map_err(e)? {
                    check(binf.epsilon(&up, i).map_err(e)? + 1 == binf.epsilon(b, i).map_err(e)?, "eps decrement")?;
                }
            }
            let s = binf.star(b);
            check(&binf.star(&s) == b, format!("star not an involution at {b}"))?;
            check(binf.epsilons(&s) == binf.epsilon_stars(b), format!("eps/eps* not exchanged at {b}"))?;
            n_axioms += 1;
        }
    }
    // MV polytope word independence
    let mut n_poly = 0;
    for c in [a2(), CartanData::type_a(3)] {
        let binf = Binf::new(&c).map_err(e)?;
        let m = c.num_positive_roots();
        for code in 0..4u64.pow(m as u32) {
            let coords: Vec<u64> = (0..m).map(|k| (code >> (2 * k)) & 3).collect();
            let d = LusztigDatum { word: binf.reference_word().clone(), coords };
            let b = binf.from_datum(&d).map_err(e)?;
            binf.mv_polytope(&b).map_err(|x| format!("{d}: {x}"))?;
            n_poly += 1;
        }
    }
    // coproduct law for the pairing
    let ring = CoordRing::new(3).map_err(e)?;
    let fam = coordring::sl3_basis(2);
    let small: Vec<&MultiPoly> = fam.elements.iter().filter(|el| el.weight.height() <= 2).map(|el| &el.poly).collect();
    let mut n_coprod = 0;
    for f in &small {
        for g in &small {
            let fg = *f * *g;
            let nu = ring.weight(&fg).ok_or("inhomogeneous product")?;
            let m = Measures::new(&ring);
            for seq in m.sequences(&nu) {
                let p = seq.len();
                let mut rhs = Rational::from_integer(0.into());
                for mask in 0..(1u32 << p) {
                    let a: Vec<usize> = (0..p).filter(|k| mask >> k & 1 == 1).map(|k| seq[k]).collect();
                    let b: Vec<usize> = (0..p).filter(|k| mask >> k & 1 == 0).map(|k| seq[k]).collect();
                    rhs += ring.pairing(&a, f) * ring.pairing(&b, g);
                }
                check(ring.pairing(&seq, &fg) == rhs, "coproduct law fails")?;
                n_coprod += 1;
            }
        }
    }
    // graded dimensions
    let mut n_dims = 0;
    for (n, bound) in [(3usize, 4i64), (4, 2)] {
        let ring = CoordRing::new(n).map_err(e)?;
        for nu in box_weights(n - 1, bound) {
            check(
                ring.graded_dim(&nu) as u64 == ring.cartan().kostant_partition(&nu),
                format!("dim C[N]_{nu} != Kostant"),
            )?;
            n_dims += 1;
        }
    }
    Ok(format!(
        "crystal axioms on {n_axioms} elements, {n_poly} MV polytopes word-consistent, {n_coprod} coproduct identities, {n_dims} graded dimensions"
    ))
}

fn c16() -> Outcome {
    let family = coordring::sl3_basis(6);
    let report = coordring::verify_biperfect(&family).map_err(e)?;
    let crystal = BasisCrystal::from_report(&family, &report, 6).map_err(e)?;
    let binf = Binf::new(&a2()).map_err(e)?;
    let bij = coordring::match_binf(&crystal, &binf, 1).map_err(e)?.bijection.ok_or("no bijection")?;
    let ring = CoordRing::new(3).map_err(e)?;
    let m = Measures::new(&ring);
    let kept: Vec<(&coordring::FamilyElement, &BinfElement)> =
        family.elements.iter().filter(|el| el.weight.height() <= 6).zip(bij.iter()).collect();
    let mut n = 0;
    for (el, b) in kept.into_iter().filter(|(el, _)| el.poly.total_degree().unwrap_or(0) <= 3) {
        let hull = support_hull(&m.ft_d(&el.poly)).map_err(e)?;
        let pol = binf.mv_polytope(b).map_err(e)?.polytope;
        check(
            hull.equals(&pol.translate(&el.weight.neg())),
            format!("{}: support {hull} vs Pol(b) - nu = {}", el.label, pol.translate(&el.weight.neg())),
        )?;
        n += 1;
    }
    Ok(format!("{n} elements: conv supp FT(D(b)) = Pol(b) - wt, i.e. Pol(b) after translating by nu"))
}

fn c17() -> Outcome {
    let module = fixtures::sl2_free(2);
    let xi = module.xi().map_err(e)?;
    let ring = CoordRing::new(2).map_err(e)?;
    let m = Measures::new(&ring);
    let ft = measures::translate(&m.ft_d(&xi), &module.dim_vector());
    let v = vec![rat(1)];
    let target = measures::moments(&ft, &v, 1).map_err(e)?[1].clone();
    let mut errors = Vec::new();
    for n in 1..=5 {
        let dist = module.grassmannian_lattice_dist(n).map_err(e)?;
        let moment = dist.scaled_moment(1, &v, module.total_dim() as u32);
        let err = moment - &target;
        errors.push(if err < Rational::from_integer(0.into()) { -err } else { err });
    }
    check(errors.windows(2).all(|w| w[1] < w[0]), format!("errors {errors:?}"))?;
    let shown: Vec<String> = errors.iter().map(ToString::to_string).collect();
    Ok(format!("first moment of D(xi) = {target}; errors n=1..5: {}", shown.join(", ")))
}

#[test]
fn acceptance() {
    let mut lines = Vec::new();
    let ms = Duration::from_millis;
    let s = Duration::from_secs;
    criterion(&mut lines, 1, "braid-move anchor (3,2,1) <-> (2,1,4)", ms(1), c1);
    criterion(&mut lines, 2, "B(inf) A2 depth 4 level sizes", s(1), c2);
    criterion(&mut lines, 3, "SL3 biperfect verification, weight box 6", s(30), c3);
    criterion(&mut lines, 4, "unique crystal bijection at height <= 6", s(30), c4);
    criterion(&mut lines, 5, "multiplicity engine vs oracle", s(60), c5);
    criterion(&mut lines, 6, "multiplicity space dimension = c^nu_{lambda mu}", s(30), c6);
    criterion(&mut lines, 7, "sl3 adjoint forcing a = b = 1/3", s(1), c7);
    criterion(&mut lines, 8, "SL3 uniqueness search at height <= 4", s(300), c8);
    criterion(&mut lines, 9, "shuffle identities, total length <= 5", s(60), c9);
    criterion(&mut lines, 10, "e^0 coefficient and n_x evaluation laws, degree <= 4", s(120), c10);
    criterion(&mut lines, 11, "Fourier transform morphism, degree <= 3", s(300), c11);
    criterion(&mut lines, 12, "preprojective anchors", s(60), c12);
    criterion(&mut lines, 13, "HN polytope = MV polytope on fixtures of height <= 3", s(60), c13);
    criterion(&mut lines, 14, "chi_flag interpolation = direct enumeration, dim <= 3", s(60), c14);
    criterion(&mut lines, 15, "property suite", s(300), c15);
    criterion(&mut lines, 16, "support hull of FT(D(b)) vs Pol(b), degree <= 3", s(60), c16);
    criterion(&mut lines, 17, "lattice distribution first-moment trend (A1, dim 2)", s(120), c17);
    let failed: Vec<usize> = lines.iter().filter(|l| !l.passed).map(|l| l.number).collect();
    println!("{} of {} criteria passed", lines.len() - failed.len(), lines.len());
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
