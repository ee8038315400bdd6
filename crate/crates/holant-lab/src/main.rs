use holant_lab::cli::main_with;
use std::io::Write;

fn main() {
    let (out, err, code) = main_with(std::env::args_os());
    print!("{out}");
    eprint!("{err}");
    let _ = std::io::stdout().flush();
    std::process::exit(code);
}
