fn main() {
    std::process::exit(gamma::cli::run());
}
