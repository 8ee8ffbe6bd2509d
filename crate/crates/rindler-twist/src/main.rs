fn main() {
    std::process::exit(rindler_twist::run());
}
