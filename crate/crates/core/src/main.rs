fn main() {
    std::process::exit(depdist::cli::main_with_args(std::env::args_os()));
}
