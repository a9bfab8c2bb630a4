fn main() {
    std::process::exit(fuzznorm::cli::main_with_args(std::env::args_os()));
}
