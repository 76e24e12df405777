use clap::Parser;

fn main() {
    let cli = topgrav::cli::Cli::parse();
    match topgrav::cli::run(cli) {
        Ok(code) => std::process::exit(code),
        Err(topgrav::cli::UsageError(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    }
}
