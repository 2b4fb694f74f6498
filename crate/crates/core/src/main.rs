fn main() {
    let code = kerek::cli::main_from_args(std::env::args_os());
    std::process::exit(code);
}
