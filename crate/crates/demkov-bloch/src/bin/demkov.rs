fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(demkov_bloch::cli::run_with_args(args));
}
