//! DOT diagrams of the word poset and of a model carrier, via the same
//! entry point the `ladderlab` binary uses.
//!
//! Run with `cargo run --example hasse_dot`.

use ladderlab::cli::run;

fn main() {
    let args: Vec<String> = ["hasse", "--depth", "3"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let out = run(&args, "");
    println!("// the word poset, truncated at depth 3");
    print!("{}", out.stdout);

    let args: Vec<String> = ["hasse", "--model", "builtin:demo-band"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let out = run(&args, "");
    println!();
    println!("// the demo band model carrier");
    print!("{}", out.stdout);
}
