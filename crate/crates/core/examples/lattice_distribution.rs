//! Euler characteristics of lattice Grassmannians of M[t]/t^n and the
//! convergence of their scaled first moment to that of D(ξ_M).

use biperfect::coordring::CoordRing;
use biperfect::measures::{self, Measures};
use biperfect::preproj::fixtures;
use biperfect::rat;

fn main() -> biperfect::Result<()> {
    let module = fixtures::sl2_free(2);
    let ring = CoordRing::new(2)?;
    let m = Measures::new(&ring);
    let ft = measures::translate(&m.ft_d(&module.xi()?), &module.dim_vector());
    let v = [rat(1)];
    let target = &measures::moments(&ft, &v, 1)?[1];
    println!("first moment of D(ξ) = {target}");
    for n in 1..=6 {
        let dist = module.grassmannian_lattice_dist(n)?;
        let moment = dist.scaled_moment(1, &v, module.total_dim() as u32);
        println!("n = {n}: scaled first moment {moment}, error {}", &moment - target);
    }
    Ok(())
}
