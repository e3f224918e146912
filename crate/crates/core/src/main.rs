fn main() {
    std::process::exit(netdof::cli::main_from_env());
}
