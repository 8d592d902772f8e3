fn main() {
    std::process::exit(interflux::cli::run_from(std::env::args_os()));
}
