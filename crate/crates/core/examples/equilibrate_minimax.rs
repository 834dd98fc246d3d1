//! Levels the extrema of the relative error after a Newton fit.
use cheb_forge::catalog::catalog;
use cheb_forge::fit::{equilibrate, locate_extrema, newton_fit, FitConfig};

fn main() -> cheb_forge::Result<()> {
    let f = catalog("exp_shifted", 36)?;
    let cfg = FitConfig::new(12)
        .with_n(36)
        .with_newton_iters(4)
        .with_tolerance(1e-300);
    let fit = newton_fit(&f, &cfg)?;
    let levelled = equilibrate(&f, &fit, &cfg)?;
    println!("peak |R| per pass: {:?}", levelled.peak_history);
    for e in locate_extrema(&f, &levelled.b, 36, 4001)? {
        println!("x = {:.6}  R = {:+.3e}", e.x, e.value);
    }
    println!("b_12: {:.10e} -> {:.10e}", fit.b.plain(12), levelled.b.plain(12));
    Ok(())
}
