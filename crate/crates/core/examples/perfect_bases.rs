//! Perfect bases of explicit representations: the sl2 polynomial module,
//! the forced scalars in the sl3 adjoint representation.

use biperfect::repcheck::{force_sl3_adjoint, verify_perfect, ExplicitRep};
use biperfect::rat;

fn main() -> biperfect::Result<()> {
    let rep = ExplicitRep::sl2_polynomial(3);
    rep.check_relations()?;
    let basis: Vec<Vec<_>> = (0..rep.dim()).map(|k| (0..rep.dim()).map(|j| rat((j == k) as i64)).collect()).collect();
    let report = verify_perfect(&rep, &basis)?;
    println!("monomial basis of the sl2 module of dimension {}: perfect = {}", rep.dim(), report.passed);

    let forced = force_sl3_adjoint()?;
    println!("sl3 adjoint: a = {}, b = {}", forced.a, forced.b);
    for (label, m) in &forced.basis {
        let rows: Vec<String> = m.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")).collect();
        println!("  {label}: [{}]", rows.join("; "));
    }
    Ok(())
}
