//! Products, calculus and basis changes on Chebyshev series.
use cheb_forge::{Basis, ChebSeries, MonomialPoly};

fn main() -> cheb_forge::Result<()> {
    // 1 + x^2 = 1.5 T_0 + 0.5 T_2, stored with the zeroth coefficient doubled
    let p = ChebSeries::from_monomial(&MonomialPoly::new([1.0, 0.0, 1.0]), Basis::Standard);
    println!("1 + x^2        = {:?}", p.coeffs());

    let square = p.product(&p)?;
    println!("(1 + x^2)^2    = {:?}", square.coeffs());
    println!("  at x = 0.5   : {}", square.eval(0.5));

    let integral = p.integrate();
    println!("integral       = {:?}", integral.coeffs());
    println!("derivative     = {:?}", integral.differentiate().coeffs());
    println!("monomial again = {:?}", square.to_monomial().coeffs());

    let shifted = ChebSeries::from_monomial(&MonomialPoly::new([0.0, 1.0]), Basis::Shifted);
    println!("x on [0, 1]    = {:?}", shifted.coeffs());
    Ok(())
}
