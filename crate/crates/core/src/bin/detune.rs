fn main() {
    std::process::exit(detune::cli::main_with_args(std::env::args_os()));
}
