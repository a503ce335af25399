use std::io::Write;

fn main() {
    let outcome = ideal_coxeter::cli::run(std::env::args_os());
    let mut stream: Box<dyn Write> = match outcome.exit_code {
        ideal_coxeter::cli::ExitCode::Usage => Box::new(std::io::stderr()),
        _ => Box::new(std::io::stdout()),
    };
    let _ = stream.write_all(outcome.report.as_bytes());
    let _ = stream.flush();
    std::process::exit(outcome.code());
}
