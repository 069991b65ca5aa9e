fn main() {
    std::process::exit(essnorm_cli::main_with_args(std::env::args_os()));
}
