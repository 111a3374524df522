fn main() -> std::process::ExitCode {
    mve_core::cli::main()
}
