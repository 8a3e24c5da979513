fn main() {
    std::process::exit(sedgeo_cli::main_with_args(std::env::args_os()));
}
