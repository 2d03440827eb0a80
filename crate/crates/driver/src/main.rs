fn main() {
    std::process::exit(depthzero_driver::run(std::env::args_os()));
}
