//! Emitting symbolic component forms: the full intersection expression,
//! the band-interval upper bound, and the case-split form.
//!
//! Run with `cargo run --example component_forms`.

use std::sync::Arc;

use ladderlab::families::{embed_pk, lro_ladder};
use ladderlab::forms::{b_upper_form, band_split_form, component_form};
use ladderlab::orthodox_chain;

fn main() {
    let model = Arc::new(orthodox_chain(3).unwrap());

    let band = embed_pk(&model, "G", "A").unwrap();
    println!("constant ladder (root G, value A):");
    println!("  component form: {}", component_form(&band).unwrap());
    println!("  band upper:     {}", b_upper_form(&band).unwrap());
    println!("  split form:     {}", band_split_form(&band).unwrap());

    let lro = lro_ladder(&model, "G").unwrap();
    println!();
    println!("top-rooted ladder (G at the Tr word, T* elsewhere):");
    println!("  component form: {}", component_form(&lro).unwrap());
    println!("  band upper:     {}", b_upper_form(&lro).unwrap());
    println!("  split form:     {}", band_split_form(&lro).unwrap());

    println!();
    println!("record stream of the component form:");
    print!("{}", component_form(&lro).unwrap().render_records());
}
