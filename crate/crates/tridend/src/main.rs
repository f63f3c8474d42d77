fn main() {
    std::process::exit(tridend::cli::main());
}
