use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use gitfan_cli::error::CliError;
use gitfan_cli::{run, Cli};

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|()| out.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(64),
            };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("gitfan: {e}");
            return ExitCode::from(64);
        }
    }
    let code = match run(&cli) {
        Ok(outcome) => {
            if let Some(e) = &outcome.error {
                eprintln!("gitfan: {e}");
            }
            match emit(&cli, &outcome.text) {
                Ok(()) => outcome.exit_code(),
                Err(e) => {
                    eprintln!("gitfan: {e}");
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            eprintln!("gitfan: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(u8::try_from(code).unwrap_or(1))
}
