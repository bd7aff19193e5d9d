use std::collections::HashMap;

use num_bigint::BigInt;

use super::expsum::{form_poly, ExpSum, TorusChart};
use super::ratfn::RationalFn;
use crate::rootdata::RootVector;
use crate::Rational;

/// The simplex `{c_0 + … + c_p = 1, c_k ≥ 0}` carries Lebesgue measure in
/// the coordinates `(c_1, …, c_p)`, so its mass is
/// `SIMPLEX_MASS_NUMERATOR / p!`. With this choice the Fourier transforms
/// of simplex push-forwards multiply by the shuffle rule.
pub const SIMPLEX_MASS_NUMERATOR: i64 = 1;

/// Total mass of the p-simplex.
pub fn simplex_mass(p: usize) -> Rational {
    let fact: BigInt = (1..=p as u64).map(BigInt::from).product();
    Rational::new(BigInt::from(SIMPLEX_MASS_NUMERATOR), fact)
}

/// `⟨β, ·⟩` as a degree-one polynomial in the chart variables.
pub fn linear_form(chart: &TorusChart, beta: &RootVector) -> super::MultiPoly {
    form_poly(chart, beta)
}

/// Fourier transform `x ↦ ∫ e^{⟨Σ c_k β_k, x⟩}` of the push-forward of the
/// simplex measure along `(c_0, …, c_p) ↦ Σ c_k β_k`.
///
/// This is the divided difference `exp[z_0, …, z_p]` with `z_k = ⟨β_k, x⟩`
/// (Hermite–Genocchi), computed by the recursion
/// `f[z_0..z_p] = (f[z_1..z_p] − f[z_0..z_{p-1}]) / (z_p − z_0)` on sorted
/// nodes, which is exact and covers repeated nodes: when all nodes agree
/// the value is `e^{β} / p!`.
pub fn ft_simplex(chart: &TorusChart, nodes: &[RootVector]) -> ExpSum {
    assert!(!nodes.is_empty(), "a simplex needs at least one vertex");
    let mut sorted = nodes.to_vec();
    sorted.sort();
    let mut memo = HashMap::new();
    divided_difference(chart, &sorted, &mut memo)
}

fn divided_difference(
    chart: &TorusChart,
    nodes: &[RootVector],
    memo: &mut HashMap<Vec<RootVector>, ExpSum>,
) -> ExpSum {
    if let Some(v) = memo.get(nodes) {
        return v.clone();
    }
    let p = nodes.len() - 1;
    let first = &nodes[0];
    let last = &nodes[p];
    let value = if first == last {
        let c = RationalFn::constant(chart.rank(), simplex_mass(p));
        ExpSum::exponential(chart, first, c)
    } else {
        let hi = divided_difference(chart, &nodes[1..], memo);
        let lo = divided_difference(chart, &nodes[..p], memo);
        let gap = RationalFn::inverse_linear(&chart.root_form(&last.sub(first)))
            .expect("distinct nodes give a nonzero form in a nondegenerate chart");
        (&hi - &lo).mul_fn(&gap)
    };
    memo.insert(nodes.to_vec(), value.clone());
    value
}

/// Closed form `Σ_k e^{β_k} / Π_{j≠k} (z_k − z_j)` for pairwise distinct
/// nodes, scaled by the simplex normalization.
pub fn distinct_node_formula(chart: &TorusChart, nodes: &[RootVector]) -> ExpSum {
    let r = chart.rank();
    let mut out = ExpSum::zero(chart);
    for (k, bk) in nodes.iter().enumerate() {
        let mut c = RationalFn::constant(r, Rational::from_integer(SIMPLEX_MASS_NUMERATOR.into()));
        for (j, bj) in nodes.iter().enumerate() {
            if j != k {
                c = &c * &RationalFn::inverse_linear(&chart.root_form(&bk.sub(bj))).unwrap();
            }
        }
        out.add_term(bk.clone(), c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use crate::rootdata::CartanData;

    fn chart() -> TorusChart {
        TorusChart::simple_root(&CartanData::type_a(2))
    }

    fn rv(v: &[i64]) -> RootVector {
        RootVector(v.to_vec())
    }

    #[test]
    fn point_mass() {
        let s = ft_simplex(&chart(), &[rv(&[0, 0])]);
        assert_eq!(s, ExpSum::one(&chart()));
    }

    #[test]
    fn segment() {
        let ch = chart();
        let s = ft_simplex(&ch, &[rv(&[0, 0]), rv(&[1, 0])]);
        let inv = RationalFn::inverse_linear(&[rat(1), rat(0)]).unwrap();
        let mut expect = ExpSum::exponential(&ch, &rv(&[1, 0]), inv.clone());
        expect.add_term(rv(&[0, 0]), inv.scale(&rat(-1)));
        assert_eq!(s, expect);
    }

    #[test]
    fn linear_form_is_additive() {
        let ch = TorusChart::coroot(&CartanData::type_a(2));
        assert!(linear_form(&ch, &rv(&[0, 0])).is_zero());
        let a = linear_form(&ch, &rv(&[1, 0]));
        let b = linear_form(&ch, &rv(&[0, 1]));
        assert_eq!(&a + &b, linear_form(&ch, &rv(&[1, 1])));
    }

    /// Composite Simpson quadrature of `exp(c0 z0 + c1 z1 + c2 z2)` over the
    /// triangle, with `c1 = u`, `c2 = (1 - u) v`.
    fn quadrature_p2(z: [f64; 3]) -> f64 {
        let n = 200;
        let h = 1.0 / n as f64;
        let w = |k: usize| if k == 0 || k == n { 1.0 } else if k % 2 == 1 { 4.0 } else { 2.0 };
        let mut total = 0.0;
        for i in 0..=n {
            let u = i as f64 * h;
            for j in 0..=n {
                let v = j as f64 * h;
                let c1 = u;
                let c2 = (1.0 - u) * v;
                let c0 = 1.0 - c1 - c2;
                total += w(i) * w(j) * (1.0 - u) * (c0 * z[0] + c1 * z[1] + c2 * z[2]).exp();
            }
        }
        total * h * h / 9.0
    }

    #[test]
    fn repeated_node_matches_quadrature() {
        use num_traits::ToPrimitive;
        let ch = chart();
        let nodes = [rv(&[0, 0]), rv(&[1, 1]), rv(&[1, 1])];
        let s = ft_simplex(&ch, &nodes);
        let points = [[1, 2], [-1, 3], [2, -1], [1, 1], [-2, -1]];
        for (k, pt) in points.iter().enumerate() {
            let x = [crate::ratio(pt[0], 3), crate::ratio(pt[1], 5 + k as i64)];
            let exact = s.evaluate(&x).unwrap().to_f64();
            let z: Vec<f64> = nodes.iter().map(|b| ch.root_value(b, &x).to_f64().unwrap()).collect();
            let approx = quadrature_p2([z[0], z[1], z[2]]);
            assert!((exact - approx).abs() < 1e-8, "{exact} vs {approx}");
        }
    }

    #[test]
    fn distinct_nodes_match_closed_form() {
        let ch = chart();
        let cases: Vec<Vec<RootVector>> = vec![
            vec![rv(&[0, 0]), rv(&[1, 0]), rv(&[1, 1])],
            vec![rv(&[0, 0]), rv(&[0, 1]), rv(&[1, 1]), rv(&[2, 1])],
            vec![rv(&[-1, 0]), rv(&[0, 0]), rv(&[0, -1])],
        ];
        for nodes in cases {
            assert_eq!(ft_simplex(&ch, &nodes), distinct_node_formula(&ch, &nodes));
        }
    }
}
