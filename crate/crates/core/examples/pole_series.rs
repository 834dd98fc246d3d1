//! Coefficients of tanh(pi x/2)/x as an infinite sum over its poles.
use cheb_forge::catalog::tanh_pi2_over_x_poles;
use cheb_forge::partial_fractions::expand_pole_series;

fn main() -> cheb_forge::Result<()> {
    for m_max in [10, 1000, 100_000] {
        let sum = expand_pole_series(tanh_pi2_over_x_poles, m_max, 4)?;
        println!(
            "m <= {m_max:6}: a_0 = {:.10}, a_2 = {:+.10}, tail of a_0 {:.1e}",
            sum.series.get(0),
            sum.series.get(2),
            sum.tail[0]
        );
    }
    Ok(())
}
