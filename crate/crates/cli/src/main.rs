fn main() {
    std::process::exit(cyclopoly_cli::run(std::env::args_os()));
}
