use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use classinv::failure::exit;
use classinv::Cli;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE as u8 } else { 0 });
        }
    };
    match classinv::run(&cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(outcome.output.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(exit::IO as u8);
            }
            ExitCode::from(outcome.status as u8)
        }
        Err(f) => {
            eprintln!("classinv: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
