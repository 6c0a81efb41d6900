fn main() {
    std::process::exit(frucht::cli::dispatch(std::env::args_os()));
}
