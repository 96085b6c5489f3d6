use std::io::Write;

fn main() {
    let (code, out, err) = bsrig::run(std::env::args_os());
    std::io::stdout().write_all(&out).expect("write stdout");
    std::io::stderr().write_all(&err).expect("write stderr");
    std::process::exit(code);
}
