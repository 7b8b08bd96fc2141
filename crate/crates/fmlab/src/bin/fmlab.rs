fn main() {
    std::process::exit(fmlab::cli::cli_main());
}
