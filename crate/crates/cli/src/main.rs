fn main() {
    std::process::exit(superell_cli::run_command(std::env::args_os()));
}
