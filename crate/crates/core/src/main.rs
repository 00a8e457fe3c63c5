fn main() {
    std::process::exit(cubic_congruence::cli::main_with_args(std::env::args_os()));
}
