fn main() {
    let stdout = std::io::stdout();
    let code = mukanren::frontend::cli::main_with_args(
        std::env::args_os(),
        &mut stdout.lock(),
        &mut std::io::stderr(),
    );
    std::process::exit(code);
}
