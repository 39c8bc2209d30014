fn main() {
    std::process::exit(rotwave::cli::dispatch(std::env::args_os()));
}
