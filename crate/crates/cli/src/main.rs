use std::process::ExitCode;

use clap::Parser;
use ore_cli::{run, Cli, Format};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (request, format) = match cli.into_request() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}", e.render());
            return ExitCode::from(e.exit_code());
        }
    };
    let response = run(&request);
    match format {
        Format::Json => println!("{}", response.report.to_json()),
        Format::Text if response.report.error.is_some() => eprintln!("{}", response.text),
        Format::Text => print!("{}", response.text),
    }
    ExitCode::from(response.report.exit_code)
}
