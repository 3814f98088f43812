fn main() {
    std::process::exit(wedit::cli::main_entry());
}
