fn main() {
    std::process::exit(puckweight::cli::main_with_args(std::env::args_os()));
}
