fn main() {
    std::process::exit(gonchar_cli::run(std::env::args_os()));
}
