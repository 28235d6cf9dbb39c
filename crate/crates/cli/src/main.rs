fn main() {
    std::process::exit(pairspace_cli::main_with_args(std::env::args_os()));
}
