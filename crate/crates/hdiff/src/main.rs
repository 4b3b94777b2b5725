fn main() {
    std::process::exit(hdiff::cli::run(std::env::args().collect()));
}
