use clap::Parser;
use reesdual_cli::Cli;

fn main() {
    let cli = Cli::parse();
    let outcome = reesdual_cli::run(&cli);
    let json = serde_json::to_string_pretty(&outcome.report).expect("reports serialize");
    println!("{json}");
    for line in &outcome.summary {
        eprintln!("{line}");
    }
    std::process::exit(outcome.exit_code());
}
