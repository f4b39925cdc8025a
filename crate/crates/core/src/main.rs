use std::process::ExitCode;

fn main() -> ExitCode {
    kahler_lab::cli::main_with(std::env::args_os())
}
