use clap::Parser;

fn main() {
    let cli = hv_verma::cli::Cli::parse();
    std::process::exit(hv_verma::cli::main_with(&cli));
}
