fn main() {
    std::process::exit(sdwave::cli::main_with_args(std::env::args_os()));
}
