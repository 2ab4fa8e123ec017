use clap::Parser;

fn main() {
    let cli = antlab_cli::Cli::parse();
    std::process::exit(antlab_cli::execute(&cli) as i32);
}
