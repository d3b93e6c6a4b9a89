use std::process::ExitCode;

fn main() -> ExitCode {
    pushrank::cli::main_with_args(std::env::args_os())
}
