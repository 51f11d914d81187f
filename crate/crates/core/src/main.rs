use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cap = std::env::var(loopalgebra::cli::CAP_ENV).ok();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = loopalgebra::cli::run(
        std::env::args_os(),
        cap.as_deref(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    );
    ExitCode::from(code as u8)
}
