fn main() {
    std::process::exit(gpmirror_cli::run(std::env::args().collect()));
}
