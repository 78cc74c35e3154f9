fn main() {
    let (stdout, stderr) = (std::io::stdout(), std::io::stderr());
    let code = cliffkern::cli::run_from(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    std::process::exit(code);
}
