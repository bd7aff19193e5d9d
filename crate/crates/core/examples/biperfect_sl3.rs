//! The explicit basis of C[N] for SL3: biperfect verification, the unique
//! crystal bijection with B(∞) and the uniqueness search.

use biperfect::coordring::{self, BasisCrystal, CoordRing, Sides};
use biperfect::crystal::Binf;
use biperfect::rootdata::CartanData;

fn main() -> biperfect::Result<()> {
    let family = coordring::sl3_basis(4);
    let report = coordring::verify_biperfect(&family)?;
    println!("{} elements, biperfect: {}", family.len(), report.passed());

    let crystal = BasisCrystal::from_report(&family, &report, 4)?;
    let binf = Binf::new(&CartanData::type_a(2))?;
    let matched = coordring::match_binf(&crystal, &binf, 2)?;
    println!("crystal bijections onto B(∞) up to height 4: {}", matched.count);

    let ring = CoordRing::new(3)?;
    for sides in [Sides::Both, Sides::LeftOnly] {
        let u = coordring::uniqueness_search(&ring, 3, sides)?;
        println!("{sides:?} search at height <= 3: unique = {}", u.unique());
    }
    for el in family.elements.iter().filter(|el| el.weight.height() <= 3) {
        println!("  {} = {}", el.label, ring.to_text(&el.poly));
    }
    Ok(())
}
