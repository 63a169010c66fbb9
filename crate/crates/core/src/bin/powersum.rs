fn main() {
    std::process::exit(powersum::cli::run(std::env::args_os()));
}
