use std::io::Write;

fn main() {
    let outcome = qpsurf::cli::run_args(std::env::args_os());
    if let Some(report) = outcome.report {
        let _ = std::io::stdout().write_all(report.as_bytes());
    }
    if let Some(d) = outcome.diagnostic {
        eprintln!("{}", d.trim_end());
    }
    std::process::exit(outcome.code);
}
