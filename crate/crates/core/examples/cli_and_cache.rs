//! Driving the command-line interface in-process with an on-disk cache:
//! the second run of a cached command is a hit with identical output.

use biperfect::cli;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(args.iter().map(|s| s.to_string()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn main() {
    let dir = std::env::temp_dir().join(format!("biperfect-example-{}", std::process::id()));
    let dir = dir.to_str().unwrap();
    let args = ["biperfect", "--cache-dir", dir, "--format", "json", "binf", "--depth", "3"];
    let (code, first, log1) = run(&args);
    let (_, second, log2) = run(&args);
    println!("exit {code}; first run: {}; second run: {}", log1.trim(), log2.trim());
    println!("identical output: {}", first == second);
    println!("{first}");
    let (_, mv, _) = run(&["biperfect", "--no-cache", "mvpolytope", "--word", "1,2,1", "--data", "3,2,1"]);
    println!("{mv}");
    let _ = std::fs::remove_dir_all(dir);
}
