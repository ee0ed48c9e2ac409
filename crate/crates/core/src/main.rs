fn main() {
    std::process::exit(opcheb::cli::run(std::env::args_os()));
}
