use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use mstd_cli::{report_failure, run, search_records, Cli, CliError, Command, OutputFormat};

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    if let Command::Search(args) = &cli.command {
        if args.format == OutputFormat::Jsonl {
            let (records, _) = search_records(args)?;
            let text: String = records.iter().map(|r| format!("{r}\n")).collect();
            return emit(cli, &text);
        }
    }
    let env = run(&cli.command)?;
    let text = serde_json::to_string_pretty(&env).expect("reports serialize") + "\n";
    emit(cli, &text)?;
    match report_failure(&env) {
        Some(err) => {
            if let Some(failures) = env.result["failures"].as_array() {
                for f in failures {
                    eprintln!("FAIL {}: {}", f["record"], f["reasons"]);
                }
            }
            Err(err)
        }
        None => {
            if let Some(warnings) = env.result["warnings"].as_array() {
                for w in warnings {
                    eprintln!("warning: {}", w.as_str().unwrap_or_default());
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
