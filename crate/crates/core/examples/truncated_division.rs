//! Quotients f/b from a truncated banded system, and how they converge in N.
use cheb_forge::catalog::catalog;
use cheb_forge::recurrence::example_denominator;
use cheb_forge::truncated::{divide, reciprocal};
use cheb_forge::Basis;

fn main() -> cheb_forge::Result<()> {
    let b = example_denominator(Basis::Standard);
    for n in [3, 4, 5, 12] {
        let a = reciprocal(&b, n)?;
        println!("N = {n:2}: a_0..a_3 = {:.8?}", &a.coeffs()[..4]);
    }

    let f = catalog("exp_std", 20)?;
    let q = divide(&f, &b, 20)?;
    println!(
        "exp(x)/B(x): condition {:.2e}, first terms {:?}",
        q.condition,
        &q.series.coeffs()[..4]
    );
    println!(
        "check at x = 0.3: {:.15} vs {:.15}",
        q.series.eval(0.3),
        0.3f64.exp() / b.eval(0.3)
    );
    Ok(())
}
