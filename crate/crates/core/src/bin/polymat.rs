fn main() -> std::process::ExitCode {
    polymat::cli::main()
}
