fn main() {
    std::process::exit(hyperdyn::cli::main_with(std::env::args_os()));
}
