fn main() {
    std::process::exit(sightline::cli::run(std::env::args_os()));
}
