//! Weight and tensor-product multiplicities from the crystal, compared with
//! Freudenthal and Racah-Speiser, plus kernel dimensions of explicit tensor
//! products.

use biperfect::crystal::Binf;
use biperfect::repcheck::{multiplicity_space_dim, oracle};
use biperfect::rootdata::{CartanData, Weight};

fn main() -> biperfect::Result<()> {
    let c = CartanData::type_a(2);
    let binf = Binf::new(&c)?;
    let adj = Weight(vec![1, 1]);
    println!("character of V(1,1):");
    for (mu, m) in oracle::character(&c, &adj) {
        println!("  {:?}: crystal {}, Freudenthal {m}", mu.0, binf.weight_multiplicity(&adj, &mu)?);
    }
    println!("V(1,1) ⊗ V(1,1):");
    for (nu, m) in oracle::tensor_decomposition(&c, &adj, &adj) {
        let crystal = binf.tensor_multiplicity(&adj, &adj, &nu)?;
        let kernel = multiplicity_space_dim(&c, &adj, &adj, &nu)?;
        println!("  V{:?}: crystal {crystal}, oracle {m}, highest-weight kernel {kernel}", nu.0);
    }
    Ok(())
}
