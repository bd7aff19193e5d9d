//! Preprojective-algebra modules: relation check, submodule dimension
//! vectors, the HN polytope, flag Euler characteristics and ξ_M, with the
//! match to B(∞).

use biperfect::coordring::CoordRing;
use biperfect::crystal::Binf;
use biperfect::preproj::{fixtures, PPModule};
use biperfect::rootdata::CartanData;

fn main() -> biperfect::Result<()> {
    let ring = CoordRing::new(3)?;
    let binf = Binf::new(&CartanData::type_a(2))?;
    let text = r#"{"cartan":"A2","dims":[1,1],"arrows":[{"from":2,"to":1,"entries":[1]}],"field":"Q"}"#;
    let m = PPModule::from_json(text)?;
    println!("module {}", m.to_json());
    println!("  relation holds: {}", m.check_relation());
    println!("  submodule dimension vectors: {:?}", m.submodule_dimvectors()?.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("  HN polytope: {}", m.hn_polytope()?);
    for s in m.sequences() {
        println!("  chi(flags of type {:?}) = {}", s.iter().map(|i| i + 1).collect::<Vec<_>>(), m.chi_flag(&s)?);
    }
    println!("  xi = {}", ring.to_text(&m.xi()?));
    println!("  crystal element: {}", m.match_crystal(&binf)?);

    for (name, m) in fixtures::sl3_generic_height_le3() {
        println!("{name:>12}: xi = {}", ring.to_text(&m.xi()?));
    }
    Ok(())
}
