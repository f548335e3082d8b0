fn main() {
    std::process::exit(icubes::cli::run());
}
