fn main() {
    std::process::exit(minext::cli::run(std::env::args_os()));
}
