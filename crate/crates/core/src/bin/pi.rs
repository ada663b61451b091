fn main() {
    std::process::exit(ramanujan_pi::cli::main_with(std::env::args_os()));
}
