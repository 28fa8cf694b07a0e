fn main() {
    std::process::exit(rowlab_cli::run(std::env::args_os()));
}
