fn main() {
    std::process::exit(agbounds::cli::run());
}
