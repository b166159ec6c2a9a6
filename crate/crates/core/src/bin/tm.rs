fn main() {
    tmkit::cli::main()
}
