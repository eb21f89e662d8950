fn main() {
    std::process::exit(lorentz_surfaces::cli::run(std::env::args_os()));
}
