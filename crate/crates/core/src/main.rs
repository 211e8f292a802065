fn main() {
    std::process::exit(gelfand::cli::main());
}
