//! Root data for A3: Cartan matrix, positive roots, the longest word and
//! its braid class, Kostant partition counts.

use biperfect::rootdata::{CartanData, RootVector};

fn main() -> biperfect::Result<()> {
    let c = CartanData::parse("A3")?;
    println!("Cartan matrix of {c}: {:?}", c.matrix());
    let roots: Vec<String> = c.positive_roots().iter().map(ToString::to_string).collect();
    println!("positive roots: {}", roots.join(" "));
    println!("|W| = {}", c.weyl_group().len());
    let w0 = c.longest_word();
    let class = c.reduced_words_w0()?;
    println!("longest word {w0}, {} reduced words", class.len());
    println!("inversion order along {w0}: {:?}", c.word_roots(&w0)?.iter().map(ToString::to_string).collect::<Vec<_>>());
    for nu in [vec![1, 1, 1], vec![2, 2, 2], vec![1, 2, 1]] {
        let nu = RootVector(nu);
        println!("Kostant partitions of {nu}: {}", c.kostant_partition(&nu));
    }
    Ok(())
}
