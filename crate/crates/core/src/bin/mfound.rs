use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, text) = matroid_foundations::cli::run(std::env::args_os());
    let _ = writeln!(std::io::stdout(), "{text}");
    ExitCode::from(code as u8)
}
