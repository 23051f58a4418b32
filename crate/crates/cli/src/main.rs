use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use hochtrace_cli::run::EXIT_PARSE;
use hochtrace_cli::{run, Cli, JobConfig};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE as u8 } else { 0 });
        }
    };
    let out = run(&JobConfig::from(cli));
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.exit_code as u8)
}
