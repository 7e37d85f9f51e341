fn main() {
    std::process::exit(fskan::cli::main_with_args(std::env::args_os()));
}
