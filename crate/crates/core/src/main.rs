use clap::Parser;

fn main() {
    let cli = srtk::cli::Cli::parse();
    std::process::exit(srtk::cli::run(cli));
}
