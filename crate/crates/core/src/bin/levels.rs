fn main() {
    std::process::exit(levels::cli::run(std::env::args_os()));
}
