fn main() {
    std::process::exit(trishape::cli::run(std::env::args_os()));
}
