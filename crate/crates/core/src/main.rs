use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use twobridge::cli::{self, Cli};

fn main() -> ExitCode {
    let args = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = cli::run(&args, &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(code), Ok(())) => ExitCode::from(code),
        (Err(e), _) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit::INPUT)
        }
        (Ok(_), Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit::INPUT)
        }
    }
}
