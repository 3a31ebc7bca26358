fn main() {
    std::process::exit(cimset::cli::run(std::env::args_os()));
}
