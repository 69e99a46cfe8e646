fn main() {
    std::process::exit(proxyrep_cli::run(std::env::args_os()));
}
