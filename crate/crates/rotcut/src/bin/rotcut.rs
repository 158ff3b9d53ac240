fn main() {
    std::process::exit(rotcut::cli::run(std::env::args()));
}
