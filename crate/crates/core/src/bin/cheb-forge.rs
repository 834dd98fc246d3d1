fn main() {
    std::process::exit(cheb_forge::cli::main());
}
