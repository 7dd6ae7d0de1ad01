fn main() { std::process::exit(berge::cli::run(std::env::args().skip(1).collect())); }
