fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (code, out) = gerbes::cli::dispatch(&args);
    print!("{out}");
    std::process::exit(code);
}
