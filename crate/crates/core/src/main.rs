fn main() {
    std::process::exit(bohr_core::cli::main_with_io());
}
