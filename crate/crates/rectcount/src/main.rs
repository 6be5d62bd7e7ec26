fn main() {
    std::process::exit(rectcount::run(std::env::args_os()));
}
