fn main() {
    std::process::exit(fzwave_cli::run(std::env::args_os()));
}
