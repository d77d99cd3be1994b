fn main() {
    std::process::exit(hbasis::cli::main())
}
