fn main() {
    std::process::exit(coexsim_cli::app::main_with_args(std::env::args_os()));
}
