fn main() -> std::process::ExitCode {
    shl::cli::main()
}
