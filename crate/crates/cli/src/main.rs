use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use solenoid_cli::{render_text, run_command, Cli, CliError, Format, Limits};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError {
                code: "usage_error".into(),
                message: e.render().to_string().trim().to_string(),
                position: None,
                argument: None,
            };
            println!("{}", err.to_json());
            return ExitCode::from(2);
        }
    };
    let outcome = Limits::from_env().and_then(|limits| run_command(&cli.command, &limits));
    match outcome {
        Ok(doc) => {
            match cli.format {
                Format::Json => println!("{doc}"),
                Format::Text => println!("{}", render_text(&doc)),
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            match cli.format {
                Format::Json => println!("{}", err.to_json()),
                Format::Text => eprintln!("error: {err}"),
            }
            ExitCode::FAILURE
        }
    }
}
