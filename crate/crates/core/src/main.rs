fn main() {
    std::process::exit(ooclab::cli::main_with_args(std::env::args_os()));
}
