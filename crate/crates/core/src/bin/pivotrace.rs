fn main() {
    std::process::exit(pivotrace::cli::main_from_args(std::env::args_os()));
}
