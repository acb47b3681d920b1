fn main() {
    std::process::exit(tcrlab::cli::main_with_env());
}
