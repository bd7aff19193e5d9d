//! MV polytopes of B(∞) elements for A2 and A3, checked against every
//! reduced word of the longest element.

use biperfect::crystal::{Binf, LusztigDatum};
use biperfect::rootdata::{CartanData, ReducedWord};

fn main() -> biperfect::Result<()> {
    let a2 = Binf::new(&CartanData::type_a(2))?;
    let b = a2.from_datum(&LusztigDatum { word: ReducedWord::from_one_based(&[1, 2, 1]), coords: vec![3, 2, 1] })?;
    let mv = a2.mv_polytope(&b)?;
    println!("A2 datum (3,2,1): weight {}, polytope {}", mv.nu, mv.polytope);
    for word in a2.words() {
        println!("  datum along {word}: {}", a2.datum(&b, word)?);
    }

    let a3 = Binf::new(&CartanData::type_a(3))?;
    let d = LusztigDatum { word: a3.reference_word().clone(), coords: vec![1, 0, 2, 1, 0, 1] };
    let mv = a3.mv_polytope(&a3.from_datum(&d)?)?;
    println!("A3 datum {d}: {} vertices, dimension {}", mv.polytope.vertices().len(), mv.polytope.dim());
    println!("  chamber points: {}", mv.chamber_points.len());
    Ok(())
}
