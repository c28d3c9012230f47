use std::io::{self, Write};
use std::process::ExitCode;

use trigen::cli::{run, SEED_ENV};

fn main() -> ExitCode {
    let env_seed = std::env::var(SEED_ENV).ok();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut err = io::stderr();
    let code = run(std::env::args_os(), env_seed.as_deref(), &mut out, &mut err);
    let _ = out.flush();
    ExitCode::from(code as u8)
}
