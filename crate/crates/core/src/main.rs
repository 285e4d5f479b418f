fn main() {
    let args: Vec<String> = std::env::args().collect();
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    let code = laguerre_lab::cli::run(&args, &mut stdout, &mut stderr);
    std::process::exit(code);
}
