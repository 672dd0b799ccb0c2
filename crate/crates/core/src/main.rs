use std::io::Write;
use std::process::ExitCode;

use impedance_sentinel::cli;

fn main() -> ExitCode {
    let code = match cli::parse_args(std::env::args_os()) {
        Ok(cmd) => cli::run(&cmd, &mut std::io::stdout().lock(), &mut std::io::stderr().lock()),
        Err(e) => {
            // --help and --version arrive here with status 0.
            let mut sink: Box<dyn Write> = if e.code == cli::EXIT_OK {
                Box::new(std::io::stdout())
            } else {
                Box::new(std::io::stderr())
            };
            let _ = write!(sink, "{}", e.message);
            if !e.message.ends_with('\n') {
                let _ = writeln!(sink);
            }
            e.code
        }
    };
    ExitCode::from(code as u8)
}
