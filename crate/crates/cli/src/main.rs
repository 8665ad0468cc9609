fn main() {
    std::process::exit(evreg_cli::run())
}
