fn main() {
    std::process::exit(polybound::cli::run(std::env::args_os()));
}
