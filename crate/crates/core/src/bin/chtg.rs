fn main() -> std::process::ExitCode {
    std::process::ExitCode::from(chtg_core::cli::run(std::env::args_os()))
}
