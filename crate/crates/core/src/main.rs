use std::process::ExitCode;

fn main() -> ExitCode {
    exciton_qft::cli::run(std::env::args_os())
}
