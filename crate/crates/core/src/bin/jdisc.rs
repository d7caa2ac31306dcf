fn main() {
    std::process::exit(jdisc_core::cli::main_with_args(std::env::args_os()));
}
