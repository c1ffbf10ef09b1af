use std::io::{ErrorKind, Write};

use clap::Parser;
use facloc_cli::{run, Cli};

fn main() {
    match run(Cli::parse()) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if let Err(err) = writeln!(stdout, "{}", out.trim_end()) {
                // a closed pipe (e.g. `| head`) is not an error for the user
                if err.kind() != ErrorKind::BrokenPipe {
                    eprintln!("error: {err}");
                    std::process::exit(1);
                }
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
