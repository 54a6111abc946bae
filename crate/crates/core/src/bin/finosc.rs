use std::process::ExitCode;

fn main() -> ExitCode {
    finosc::cli::run(std::env::args_os())
}
