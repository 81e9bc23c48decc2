fn main() {
    std::process::exit(uclab::cli::run_from(std::env::args_os()));
}
