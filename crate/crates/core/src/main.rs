fn main() {
    std::process::exit(unideform::cli::run(std::env::args_os()));
}
