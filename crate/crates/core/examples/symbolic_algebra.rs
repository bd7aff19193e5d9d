//! The exact symbolic layer: polynomials, rational functions with linear
//! denominators, exponential sums and their restriction to a line.

use biperfect::rat;
use biperfect::rootdata::{CartanData, RootVector};
use biperfect::symbolic::{ExpSum, MultiPoly, RationalFn, TorusChart};

fn main() -> biperfect::Result<()> {
    let x = MultiPoly::var(2, 0);
    let y = MultiPoly::var(2, 1);
    let f = &(&x * &x) - &(&x * &y);
    println!("f = {}, df/da = {}", f.to_text(&["a", "b"]), f.derivative(0).to_text(&["a", "b"]));

    let g = &RationalFn::inverse_linear(&[rat(1), rat(0)])? * &RationalFn::inverse_linear(&[rat(1), rat(1)])?;
    println!("g = {g}, g(1,2) = {}", g.eval(&[rat(1), rat(2)])?);

    let chart = TorusChart::simple_root(&CartanData::type_a(2));
    let s = &ExpSum::one(&chart) - &ExpSum::exponential(&chart, &RootVector(vec![-1, 0]), RationalFn::one(2));
    let h = s.mul_fn(&RationalFn::inverse_linear(&[rat(1), rat(0)])?);
    println!("(1 - e^(-a1)) / a1 = {h}");
    let v = h.evaluate(&[rat(1), rat(1)])?;
    println!("value at (1, 1): {v} ≈ {:.6}", v.to_f64());
    Ok(())
}
