fn main() {
    std::process::exit(khcausal::cli::run());
}
