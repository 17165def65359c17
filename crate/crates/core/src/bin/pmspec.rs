use clap::Parser;
use pseudomoment_spectra::cli::{error_code, run, Cli};

fn main() {
    let code = match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            error_code(&e)
        }
    };
    std::process::exit(code);
}
