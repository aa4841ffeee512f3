fn main() {
    std::process::exit(heun::cli::run(std::env::args_os()));
}
