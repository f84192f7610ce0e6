use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(namelint::cli::run(std::env::args_os()))
}
