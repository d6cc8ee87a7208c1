fn main() {
    std::process::exit(semigroup_harmonic::cli::run(std::env::args_os()));
}
