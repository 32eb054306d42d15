fn main() {
    std::process::exit(cartsym::cli::run());
}
