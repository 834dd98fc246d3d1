//! Chebyshev series of psi(x + 2) and the constants K_n behind it.
use cheb_forge::catalog::catalog;
use cheb_forge::special::{digamma_identities, digamma_k};

fn main() -> cheb_forge::Result<()> {
    for (n, k) in digamma_k(8).iter().enumerate() {
        println!("K_{n} = {k:.16e}");
    }
    println!("identities {:?}", digamma_identities());
    let psi = catalog("digamma_plus2", 40)?;
    for x in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        println!("psi({:.1}) = {:.15}", x + 2.0, psi.eval(x));
    }
    Ok(())
}
