use std::io::Write;

fn main() {
    let mut args = Vec::new();
    for a in std::env::args_os().skip(1) {
        match a.into_string() {
            Ok(s) => args.push(s),
            Err(a) => {
                let _ = writeln!(
                    std::io::stderr(),
                    "error: argument {a:?} is not valid UTF-8"
                );
                std::process::exit(splitfield_cli::EXIT_USAGE);
            }
        }
    }
    let code = splitfield_cli::run(&args, &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
