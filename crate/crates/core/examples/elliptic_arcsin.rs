//! arcsin(x/sqrt2)/x through complete elliptic integrals.
use cheb_forge::catalog::{asin_sqrt2_alpha, catalog};
use cheb_forge::special::{elliptic_g, elliptic_ke_half};

fn main() -> cheb_forge::Result<()> {
    let (k, e) = elliptic_ke_half();
    println!("K = {k:.16}, E = {e:.16}");
    println!("G_0..G_6 = {:?}", &elliptic_g(6)[..=6]);
    let f = catalog("asin_sqrt2_over_x", 8)?;
    for row in asin_sqrt2_alpha(8) {
        let [a1, a2, a3, a4] = &row.alpha;
        println!(
            "n = {}: alpha = ({a1}, {a2}, {a3}, {a4}), f_n = {:.16e}",
            row.n,
            row.f(f.get(0))
        );
    }
    Ok(())
}
