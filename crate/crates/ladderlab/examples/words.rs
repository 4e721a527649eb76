//! The alternating word monoid: multiplication, the length-reversing
//! order, mirrors, and the translation to index pairs.
//!
//! Run with `cargo run --example words`.

use ladderlab::{enumerate_words, Word};

fn main() {
    let a: Word = "lr".parse().unwrap();
    let b: Word = "rl".parse().unwrap();

    println!(
        "{a} * {b} = {} (one letter deleted at the junction)",
        a.multiply(&b)
    );
    println!("{a} * {a} = {} (plain concatenation)", a.multiply(&a));

    let e = Word::empty();
    println!("{e} * {a} = {} (adjoined identity)", e.multiply(&a));

    println!();
    println!("mirror({a}) = {}", a.mirror());
    println!("mirror({a} * {b}) = {}", a.multiply(&b).mirror());

    println!();
    println!("order: longer words are smaller, so the empty word is the top");
    for w in enumerate_words(3) {
        let cmp = match (w.leq(&a), a.leq(&w)) {
            (true, true) => "= ",
            (true, false) => "<=",
            (false, true) => ">=",
            (false, false) => "||",
        };
        println!("  {w:4} {cmp} {a}   index {}", w.gamma());
    }

    println!();
    let w: Word = "lrl".parse().unwrap();
    println!("{w} <-> {} <-> {}", w.gamma(), w.gamma().to_word());
}
