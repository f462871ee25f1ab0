fn main() {
    std::process::exit(qworkbench::harness::cli::cli_main(std::env::args_os()));
}
