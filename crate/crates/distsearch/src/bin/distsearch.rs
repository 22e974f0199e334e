use std::process::ExitCode;

fn main() -> ExitCode {
    distsearch::cli::main()
}
