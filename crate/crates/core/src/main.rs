fn main() {
    std::process::exit(charforge::cli::main_with_args(std::env::args_os()));
}
