fn main() {
    std::process::exit(cloner_sim::cli::run(std::env::args_os()));
}
