fn main() {
    std::process::exit(ao_evolve::run());
}
