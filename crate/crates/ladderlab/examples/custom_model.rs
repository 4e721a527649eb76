//! Loading a kernel-lattice model from the line-oriented file format,
//! validating it, and evaluating the K* and lower-operator machinery.
//!
//! Run with `cargo run --example custom_model`.

use ladderlab::{parse_model, Word};

const MODEL: &str = "\
# A five-element example: a group chain T < A with two zero atoms feeding
# a completely simple top.
[elements]
T
LZ
RZ
A
CS
[order]
T < LZ
T < RZ
T < A
LZ < CS
RZ < CS
A < CS
[k0]
T
A
CS
[designated]
T = T
LZ = LZ
RZ = RZ
[lowL]
LZ -> T
A -> T
CS -> RZ
[lowR]
RZ -> T
A -> T
CS -> LZ
[kmap]
LZ -> T
RZ -> T
[parts]
T = group
A = group
CS = cs
";

const BROKEN: &str = "\
[elements]
a
b
[order]
a < b
[k0]
a
b
[lowL]
a -> b   # not decreasing
";

fn main() {
    let model = parse_model("example", MODEL).unwrap().build().unwrap();
    println!(
        "model '{}' with {} elements",
        model.name(),
        model.carrier_len()
    );
    println!("valid: {}", model.is_valid());

    let cs = model.elem("CS").unwrap();
    println!();
    println!("kstar(CS) = {}", model.ext_name(model.kstar(cs)));
    for tau in ["l", "r", "lr", "rl", "lrl"] {
        let w: Word = tau.parse().unwrap();
        println!(
            "lower image of CS along {tau:3} = {}",
            model.ext_name(model.lower_star(cs, &w))
        );
    }

    println!();
    println!("a planted defect is reported, not rejected:");
    let broken = parse_model("broken", BROKEN).unwrap().build().unwrap();
    for violation in broken.validate() {
        println!("  {violation}");
    }
}
