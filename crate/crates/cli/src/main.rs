use clap::Parser;
use std::io::Write;

fn main() {
    let cli = ballq_cli::Cli::parse();
    let report = ballq_cli::run(&cli);
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(report.render(cli.porcelain).as_bytes());
    let _ = out.flush();
    eprint!("{}", report.render_diagnostics());
    std::process::exit(report.status().exit_code());
}
