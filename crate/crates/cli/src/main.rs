use std::process::ExitCode;

use clap::Parser;
use gft_cli::{exit_code, run, Cli, RunConfig, SCALE_ENV};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let scale = std::env::var(SCALE_ENV).ok();
    let result = RunConfig::from_cli(cli, scale.as_deref()).and_then(|cfg| {
        let out = run(&cfg)?;
        match &cfg.output_path {
            Some(path) => std::fs::write(path, &out.body).map_err(|e| gft_core::Error::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })?,
            None => print!("{}", out.body),
        }
        Ok(out.status)
    });
    match result {
        Ok(status) => ExitCode::from(status as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err) as u8)
        }
    }
}
