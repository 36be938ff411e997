fn main() {
    std::process::exit(nqr_cli::run(std::env::args_os()));
}
