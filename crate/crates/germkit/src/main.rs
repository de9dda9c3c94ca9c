fn main() {
    std::process::exit(germkit::cli::run_from_args());
}
