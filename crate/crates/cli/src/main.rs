fn main() {
    std::process::exit(hypercount_cli::run(std::env::args_os()));
}
