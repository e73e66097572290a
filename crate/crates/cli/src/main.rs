fn main() {
    std::process::exit(mahavier_cli::run());
}
