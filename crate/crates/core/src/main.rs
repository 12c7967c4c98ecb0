use std::io::Write;

fn main() {
    let (code, out) = vsa_core::report::run(std::env::args_os());
    let _ = writeln!(std::io::stdout(), "{out}");
    std::process::exit(code);
}
