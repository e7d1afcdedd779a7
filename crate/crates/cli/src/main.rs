use std::io::Write;
use std::process::ExitCode;

use synchro_cli::{run, EXIT_USAGE};

fn main() -> ExitCode {
    let (result, json) = run(std::env::args_os(), std::io::stdin().lock());
    let text = result.output(json);
    if result.code == EXIT_USAGE {
        eprintln!("{}", text.trim_end());
    } else if !text.is_empty() {
        let mut stdout = std::io::stdout().lock();
        let _ = writeln!(stdout, "{}", text.trim_end_matches('\n'));
    }
    ExitCode::from(result.code as u8)
}
