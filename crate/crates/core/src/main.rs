fn main() {
    let (code, out, err) = decause::cli::run_cli(std::env::args_os());
    print!("{out}");
    eprint!("{err}");
    std::process::exit(code);
}
