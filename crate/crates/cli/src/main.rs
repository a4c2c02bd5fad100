use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use tetra_cli::{apply_env_cap, run, Cli, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = apply_env_cap() {
        eprintln!("tetra: {e}");
        return ExitCode::from(e.exit_code());
    }
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.render(cli.format).as_bytes()).is_err() {
                return ExitCode::from(EXIT_USAGE);
            }
            ExitCode::from(out.exit_code())
        }
        Err(e) => {
            eprintln!("tetra: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
