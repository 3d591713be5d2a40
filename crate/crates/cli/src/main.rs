use clap::Parser;

fn main() {
    let cli = trimode_cli::args::Cli::parse();
    std::process::exit(trimode_cli::run(&cli));
}
