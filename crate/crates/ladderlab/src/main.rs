use std::io::Read;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut stdin = String::new();
    if args.iter().any(|a| a == "-") {
        let _ = std::io::stdin().read_to_string(&mut stdin);
    }
    let outcome = ladderlab::cli::run(&args, &stdin);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    std::process::exit(outcome.code);
}
