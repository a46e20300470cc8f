fn main() {
    std::process::exit(nakagami_rmt_cli::run(std::env::args_os()));
}
