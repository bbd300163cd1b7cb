fn main() { std::process::exit(apollonian::cli::run(std::env::args().skip(1).collect())); }
