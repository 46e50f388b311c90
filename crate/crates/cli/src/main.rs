use std::panic;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = panic::catch_unwind(|| {
        let mut out = std::io::stdout().lock();
        let mut err = std::io::stderr().lock();
        flatreach::cli::run(std::env::args_os(), &mut out, &mut err)
    });
    let code = outcome.unwrap_or(flatreach::EXIT_INTERNAL);
    ExitCode::from(code as u8)
}
