fn main() {
    std::process::exit(affinoid::cli::run(std::env::args_os()));
}
