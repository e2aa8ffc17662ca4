fn main() {
    std::process::exit(cubic_pcf::cli::main_with_args(std::env::args_os()));
}
