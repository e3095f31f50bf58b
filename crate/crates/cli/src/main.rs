mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command, Format};
use commands::{Outcome, EXIT_INVALID};
use output::{render_sweep_row, render_table, OutputRecord};

fn render(records: &[OutputRecord], format: Format, sweep: bool) -> String {
    let mut out = String::new();
    for rec in records {
        match format {
            Format::Json => {
                out.push_str(&serde_json::to_string(rec).expect("records serialize"));
                out.push('\n');
            }
            Format::Table if sweep => out.push_str(&render_sweep_row(rec)),
            Format::Table => out.push_str(&render_table(rec)),
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_INVALID as u8),
            };
        }
    };

    let sweep = matches!(cli.command, Command::Sweep(_));
    let result = match &cli.command {
        Command::Invariant(a) => commands::invariant(a, cli.decimal),
        Command::Series(a) => commands::series(a),
        Command::Sweep(a) => commands::sweep(a, cli.decimal),
        Command::Selfcheck => Ok(commands::selfcheck()),
    };
    let Outcome { records, code } = match result {
        Ok(o) => o,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return ExitCode::from(f.code as u8);
        }
    };

    if records
        .iter()
        .any(|r| matches!(r, OutputRecord::Invariant(i) if i.conjectural))
    {
        eprintln!("note: output contains conjectural values (unanalysed Quot components or conjectural formula)");
    }

    let text = render(&records, cli.format, sweep);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(EXIT_INVALID as u8);
    }
    ExitCode::from(code as u8)
}
