fn main() {
    std::process::exit(terracini::cli::run_cli(std::env::args_os()));
}
