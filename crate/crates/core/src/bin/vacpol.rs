fn main() {
    std::process::exit(vacpol_core::cli::main_from(std::env::args_os()));
}
