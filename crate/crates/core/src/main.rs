fn main() {
    std::process::exit(freespec::cli::main_with_args(std::env::args_os()));
}
