use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use infcwf_cli::{run, Cli, Format};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = cli.options.format == Format::Text;
    let report = run(&cli, &mut |line| {
        if text {
            eprintln!("{line}");
        }
    });
    let rendered = if text { report.to_text() } else { report.to_machine() };
    let mut out = std::io::stdout().lock();
    // A closed pipe is not worth a panic.
    let _ = out.write_all(rendered.as_bytes());
    let _ = out.flush();
    ExitCode::from(report.exit_code())
}
