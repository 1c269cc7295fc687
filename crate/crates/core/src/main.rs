fn main() {
    std::process::exit(gpahcs::cli::main_with_args(std::env::args_os()));
}
