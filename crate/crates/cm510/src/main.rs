use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(cm510::cli::run())
}
