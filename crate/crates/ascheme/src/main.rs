fn main() {
    std::process::exit(ascheme::cli::run());
}
