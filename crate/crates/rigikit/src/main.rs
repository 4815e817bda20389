fn main() {
    std::process::exit(rigikit::cli::run());
}
