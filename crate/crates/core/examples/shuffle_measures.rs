//! The measures D and D-bar attached to elements of C[N]: sequence
//! transforms, the shuffle law, the e^0 coefficient, n_x and the pullback
//! identity, support polytopes and moments.

use biperfect::coordring::CoordRing;
use biperfect::measures::{self, Measures};
use biperfect::rat;

fn main() -> biperfect::Result<()> {
    let ring = CoordRing::new(3)?;
    let m = Measures::new(&ring);
    let names: Vec<String> = m.chart().variable_names();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();

    let lhs = &m.d_bar_seq(&[0]) * &m.d_bar_seq(&[1]);
    let rhs = &m.d_bar_seq(&[0, 1]) + &m.d_bar_seq(&[1, 0]);
    println!("Dbar(1) Dbar(2) = {}, shuffle sum = {}", lhs.to_text(&names), rhs.to_text(&names));

    let f = ring.parse("x*y - z")?;
    let report = m.morphism_check(&f);
    println!("f = xy - z");
    println!("  FT(D(f)) = {}", m.ft_d(&f));
    println!("  Dbar(f) = {}", report.d_bar.to_text(&names));
    println!("  pullback matches transform: {}", report.transform_matches());
    println!("  e^0 coefficient equals Dbar: {}", report.zero_coefficient_matches());
    println!("  Dbar(f) = f(n_x^-1): {}", report.d_bar_is_nx_inverse_value());

    let ft = m.ft_d(&f);
    println!("  support hull: {}", measures::support_hull(&ft)?);
    let v = [rat(1), rat(2)];
    println!("  moments along (1,2): {:?}", measures::moments(&ft, &v, 2)?.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("  total mass: {}", measures::total_mass(&ft)?);
    Ok(())
}
