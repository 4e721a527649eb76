//! Family membership predicates and the verified embedding constructions.
//!
//! Run with `cargo run --example families_embeddings`.

use std::sync::Arc;

use ladderlab::families::{
    embed_qk, embedding_check, in_family, lro_ladder, EmbedConstruct, FamilyTag,
};
use ladderlab::{cs_model, orthodox_chain};

fn main() {
    let chain = Arc::new(orthodox_chain(3).unwrap());
    let lro = lro_ladder(&chain, "A").unwrap();
    println!("top-rooted ladder over '{}':", chain.name());
    for tag in FamilyTag::ALL {
        let report = in_family(tag, &lro).unwrap();
        println!("  {:7} member: {}", tag.name(), report.is_clean());
    }

    let cs = Arc::new(cs_model());
    let qk = embed_qk(&cs, "CS", "G").unwrap();
    println!();
    println!("constant cs-rooted ladder over '{}':", cs.name());
    for tag in FamilyTag::ALL {
        let report = in_family(tag, &qk).unwrap();
        println!("  {:7} member: {}", tag.name(), report.is_clean());
    }

    println!();
    for (model, construct, label) in [
        (
            &chain,
            EmbedConstruct::Pk { p: "G".into() },
            "pk over the chain",
        ),
        (&chain, EmbedConstruct::Lro, "lro over the chain"),
        (
            &cs,
            EmbedConstruct::Qk { q: "CS".into() },
            "qk over the cs model",
        ),
    ] {
        let report = embedding_check(model, &construct).unwrap();
        println!(
            "embedding check, {label}: {}",
            if report.is_clean() {
                "all checks pass"
            } else {
                "FAILED"
            }
        );
        for failure in &report.failures {
            println!("  {failure}");
        }
    }
}
