//! Driving the command layer in-process with JSON documents.

use qeig::cli::{run, CliConfig, Command};

fn main() {
    let doc = r#"{"kind": "quaternion", "n": 2,
        "entries": [[[0,1,0,0],[0,0,1,0]], [[0,0,0,1],[0,1,0,0]]]}"#;
    for cmd in [Command::Eig, Command::Translate, Command::Verify] {
        let out = run(&CliConfig::new(cmd), &[doc.to_string()]);
        println!("== {} (exit {})", cmd.name(), out.exit_code);
        println!("{}", out.output);
    }
    let bad = r#"{"kind": "quaternion", "n": 3, "entries": [[[0,0,0,0]]]}"#;
    let out = run(&CliConfig::new(Command::Eig), &[bad.to_string()]);
    println!("== rejected input (exit {})\n{}", out.exit_code, out.output);
}
