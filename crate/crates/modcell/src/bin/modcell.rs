fn main() {
    std::process::exit(modcell::cli::main_with_args(std::env::args_os()));
}
