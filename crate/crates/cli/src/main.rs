fn main() {
    std::process::exit(fuzzyq_cli::main_with_args(std::env::args_os()));
}
