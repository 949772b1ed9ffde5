fn main() {
    std::process::exit(lanecraft::cli::run());
}
