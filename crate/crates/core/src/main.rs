fn main() {
    std::process::exit(jacobiforge::cli::run(std::env::args_os()));
}
