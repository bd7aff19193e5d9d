//! B(∞) for A2 through Lusztig data: a braid-move transition, the crystal
//! operators, the star involution and the level sizes of the crystal graph.

use biperfect::crystal::{Binf, LusztigDatum};
use biperfect::rootdata::{CartanData, ReducedWord};

fn main() -> biperfect::Result<()> {
    let binf = Binf::new(&CartanData::type_a(2))?;
    let d = LusztigDatum { word: ReducedWord::from_one_based(&[1, 2, 1]), coords: vec![3, 2, 1] };
    let t = binf.transition(&d, &ReducedWord::from_one_based(&[2, 1, 2]))?;
    println!("transition: {d} -> {t}");

    let b = binf.from_datum(&d)?;
    println!("b = {b}, weight {}, epsilons {:?}, star epsilons {:?}", binf.nu(&b), binf.epsilons(&b), binf.epsilon_stars(&b));
    for i in 0..2 {
        let f = binf.f_tilde(&b, i)?;
        println!("f_{} b = {f}, e_{} f_{} b = {}", i + 1, i + 1, i + 1, binf.e_tilde(&f, i)?.expect("raising after lowering"));
    }
    println!("b* = {}", binf.star(&b));

    let graph = binf.enumerate(5)?;
    println!("level sizes to depth 5: {:?}", graph.level_sizes());
    println!("{}", graph.to_dot(false).lines().take(6).collect::<Vec<_>>().join("\n"));
    Ok(())
}
