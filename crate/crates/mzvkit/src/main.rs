fn main() { std::process::exit(mzvkit::cli::run(std::env::args().skip(1).collect())); }
