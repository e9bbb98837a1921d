use clap::Parser;
use kturan::cli::{error_json, run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            println!("{}", outcome.render(cli.json));
            std::process::exit(outcome.exit_code);
        }
        Err(err) => {
            if cli.json {
                println!("{}", error_json(&err));
            }
            eprintln!("error: {err}");
            std::process::exit(2);
        }
    }
}
