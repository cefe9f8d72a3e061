use std::io::Write;

use clap::Parser;

fn main() {
  let cli = cellsheaf::cli::Cli::parse();
  let outcome = cellsheaf::cli::run(&cli);
  let mut out = std::io::stdout().lock();
  let _ = out.write_all(outcome.output.as_bytes());
  let _ = out.flush();
  let _ = std::io::stderr().write_all(outcome.diagnostics.as_bytes());
  std::process::exit(outcome.exit_code);
}
