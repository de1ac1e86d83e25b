fn main() {
    let out = &mut std::io::stdout();
    let err = &mut std::io::stderr();
    std::process::exit(linkhom_cli::run(std::env::args_os(), out, err));
}
