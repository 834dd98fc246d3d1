//! Extends a few leading coefficients of 1/B with the division recurrence.
use cheb_forge::recurrence::{example_denominator, extend, DivisionStates};
use cheb_forge::truncated::reciprocal;
use cheb_forge::Basis;

fn main() -> cheb_forge::Result<()> {
    let b = example_denominator(Basis::Standard);
    for state in DivisionStates::new(&b)?.take(3) {
        let s = state?;
        println!("T_{} = ({:?}) B + remainder {:?}", s.n, s.d, s.c);
    }

    // the recurrence runs upward and amplifies rounding in the seed roughly
    // like the remainder coefficients grow, so it drifts from the direct
    // solution after a handful of terms
    let direct = reciprocal(&b, 40)?;
    let extended = extend(&direct.coeffs()[..3], &b, 10)?;
    for n in 0..=10 {
        println!(
            "a_{n:<2} recurrence {:.12e}  direct {:.12e}",
            extended.get(n),
            direct.get(n)
        );
    }
    Ok(())
}
