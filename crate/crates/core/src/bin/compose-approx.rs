fn main() {
    std::process::exit(compose_approx::cli::run());
}
