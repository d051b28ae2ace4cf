fn main() {
    std::process::exit(wmd_cli::main_with_args(std::env::args_os()));
}
