use std::io::Write;
use std::process::ExitCode;

use bruhat_cli::codec;
use bruhat_cli::{run, Cli};
use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(codec::to_pretty(&report.value).as_bytes());
            ExitCode::from(report.code as u8)
        }
        Err(e) => {
            let doc = json!({ "schema": codec::SCHEMA, "error": { "kind": e.kind(), "message": e.to_string() } });
            eprint!("{}", codec::to_pretty(&doc));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
