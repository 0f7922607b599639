use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = flat_affine::cli::run(std::env::args_os());
    std::io::stdout()
        .write_all(out.stdout.as_bytes())
        .expect("stdout is writable");
    std::io::stderr()
        .write_all(out.stderr.as_bytes())
        .expect("stderr is writable");
    ExitCode::from(out.code as u8)
}
