//! Newton fit of a polynomial whose relative error series starts late.
use cheb_forge::catalog::catalog;
use cheb_forge::fit::{newton_fit, relative_error_curve, uniform_grid, FitConfig};
use cheb_forge::Basis;

fn main() -> cheb_forge::Result<()> {
    let f = catalog("sinc_pi2", 16)?;
    let cfg = FitConfig::new(8).with_n(16).with_newton_iters(4).with_tolerance(1e-300);
    let fit = newton_fit(&f, &cfg)?;
    println!("history {:?}", fit.history);
    println!("estimated relative error {:.3e}", fit.relerr_estimate);
    for (n, d) in fit.b.to_monomial().coeffs().iter().enumerate() {
        println!("b_{n} = {:+.16e}   d_{n} = {d:+.16e}", fit.b.plain(n));
    }
    let xs = uniform_grid(Basis::Standard, 9);
    let r = relative_error_curve(&f, &fit.b, 16, &xs)?;
    for (x, v) in xs.iter().zip(r) {
        println!("R({x:+.2}) = {v:+.3e}");
    }
    Ok(())
}
