//! The six relations on ladders, shown on the two standard constructions:
//! constant-below-the-root ladders share a root but differ everywhere else,
//! while the top-rooted ladders with a single nontrivial value share their
//! whole left chain.
//!
//! Run with `cargo run --example ladder_relations`.

use std::sync::Arc;

use ladderlab::families::{embed_pk, lro_ladder};
use ladderlab::orthodox_divisors;
use ladderlab::relations::{contains_bands, related, RelationTag};

fn main() {
    let model = Arc::new(orthodox_divisors(12).unwrap());

    let phi_u = embed_pk(&model, "12", "2").unwrap();
    let phi_w = embed_pk(&model, "12", "3").unwrap();
    println!("constant ladders with root 12 and values 2 and 3:");
    for tag in RelationTag::ALL {
        println!(
            "  related({:2}) = {}",
            tag.name(),
            related(tag, &phi_u, &phi_w).unwrap()
        );
    }

    let a = lro_ladder(&model, "2").unwrap();
    let b = lro_ladder(&model, "3").unwrap();
    println!();
    println!("top-rooted ladders with values 2 and 3 at the Tr word:");
    for tag in RelationTag::ALL {
        println!(
            "  related({:2}) = {}",
            tag.name(),
            related(tag, &a, &b).unwrap()
        );
    }

    println!();
    println!(
        "constant ladders contain all bands: {}",
        contains_bands(&phi_u).unwrap()
    );
    println!(
        "the top-rooted ladders do not:      {}",
        contains_bands(&a).unwrap()
    );
}
