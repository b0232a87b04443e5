fn main() {
    let code = pgcolor_cli::run(std::env::args_os());
    std::process::exit(code);
}
