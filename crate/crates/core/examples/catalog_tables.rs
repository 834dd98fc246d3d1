//! Prints the leading coefficients of every built-in function.
use cheb_forge::catalog::entries;

fn main() {
    for entry in entries() {
        let s = entry.generate(6);
        let shown: Vec<String> = s.coeffs().iter().map(|v| format!("{v:.6e}")).collect();
        println!("{:<18} {:<8} {}", entry.name, entry.basis.name(), shown.join(" "));
    }
}
