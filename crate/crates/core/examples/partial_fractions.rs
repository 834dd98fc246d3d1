//! Chebyshev coefficients of 1/p(x) from the roots of p.
use cheb_forge::partial_fractions::{decompose, expand_inverse, sensitivity};
use cheb_forge::MonomialPoly;

fn main() -> cheb_forge::Result<()> {
    // (4 - x)^2 (5 + x) = 80 - 24x - 3x^2 + x^3
    let p = MonomialPoly::new([80.0, -24.0, -3.0, 1.0]);
    let d = decompose(&p)?;
    for term in &d.terms {
        println!("root {:.6} order {} weight {:.6}", term.z, term.s, term.weight);
    }
    let a = expand_inverse(&d, 8)?;
    for (n, v) in a.coeffs().iter().enumerate() {
        println!("a_{n} = {v:.10e}");
    }
    for term in d.terms.iter().filter(|t| t.s == 1) {
        println!(
            "sensitivity of a_8 to the root at {:.2}: {:.3e}",
            term.z.re,
            sensitivity(term.z, 8)?
        );
    }
    Ok(())
}
