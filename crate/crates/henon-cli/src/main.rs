fn main() {
    std::process::exit(henon_cli::run(std::env::args_os()));
}
