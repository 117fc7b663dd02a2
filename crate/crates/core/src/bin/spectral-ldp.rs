use std::process::ExitCode;

fn main() -> ExitCode {
    let code = spectral_ldp::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    ExitCode::from(code as u8)
}
