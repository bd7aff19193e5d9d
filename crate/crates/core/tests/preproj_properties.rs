//! Genericity and multiplicativity checks for preprojective modules.

use biperfect::coordring::CoordRing;
use biperfect::preproj::{fixtures, PPModule};
use biperfect::{ratio, Rational};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_nonzero(rng: &mut StdRng) -> Rational {
    loop {
        let n: i64 = rng.gen_range(-9..=9);
        if n != 0 {
            return ratio(n, rng.gen_range(1..=5));
        }
    }
}

#[test]
fn generic_data_survives_random_rescaling_of_arrows() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for (name, m) in fixtures::sl3_generic_height_le3() {
        let xi = m.xi().unwrap();
        for _ in 0..4 {
            let p: PPModule = m.pattern_perturbation(|| random_nonzero(&mut rng));
            if !p.check_relation() {
                continue;
            }
            assert!(m.same_generic_data(&p).unwrap(), "{name}: generic data moved");
            assert_eq!(p.xi().unwrap(), xi, "{name}: xi moved");
        }
    }
}

#[test]
fn xi_is_multiplicative_on_direct_sums() {
    let ring = CoordRing::new(3).unwrap();
    let fx = fixtures::sl3_generic_height_le3();
    let small: Vec<_> = fx.iter().filter(|(_, m)| m.total_dim() <= 2).collect();
    for (a, ma) in &small {
        for (b, mb) in &small {
            if ma.total_dim() + mb.total_dim() > 3 {
                continue;
            }
            let sum = ma.direct_sum(mb).unwrap();
            let lhs = sum.xi().unwrap();
            let rhs = &ma.xi().unwrap() * &mb.xi().unwrap();
            assert_eq!(lhs, rhs, "xi({a} + {b}) = {} but product is {}", ring.to_text(&lhs), ring.to_text(&rhs));
        }
    }
}

#[test]
fn json_round_trip_preserves_modules() {
    for (name, m) in fixtures::sl3_generic_height_le3() {
        let text = m.to_json().to_string();
        let back = PPModule::from_json(&text).unwrap();
        assert_eq!(back.to_json(), m.to_json(), "{name}");
    }
}
