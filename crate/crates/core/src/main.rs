fn main() {
    std::process::exit(pmodulus::cli::main_with_args(std::env::args_os()));
}
