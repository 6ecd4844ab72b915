use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = liedeform_cli::run(std::env::args_os(), &mut io::stdin());
    let mut out = io::stdout().lock();
    let _ = out.write_all(outcome.output.as_bytes());
    let _ = out.flush();
    ExitCode::from(outcome.code as u8)
}
