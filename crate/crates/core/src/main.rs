fn main() {
    std::process::exit(tg_quench::cli::run(std::env::args_os()));
}
