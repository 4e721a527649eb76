//! Ladder calculus for the lattice of completely regular semigroup
//! varieties.
//!
//! The crate provides, over finite pluggable kernel-lattice models:
//!
//! - the alternating word monoid and its index poset ([`theta`]);
//! - model loading, validation and the K*/lower-operator machinery
//!   ([`model`]);
//! - ladders, the word-form and index-form condition checkers, lattice
//!   operations and exhaustive enumeration ([`ladder`]);
//! - the relation calculus and band-containment predicates ([`relations`]);
//! - symbolic component-form emission ([`forms`]);
//! - family predicates and the embedding constructions ([`families`]);
//! - a thin command-line front end ([`cli`]).
//!
//! Start with the runnable programs under `examples/`.

pub mod cli;
pub mod error;
pub mod families;
pub mod forms;
pub mod ladder;
pub mod model;
pub mod relations;
pub mod theta;

pub use error::Error;
pub use ladder::{enumerate_phi, parse_ladder, Condition, ConditionReport, Ladder};
pub use model::{
    builtin_model, cs_model, demo_band_model, orthodox_chain, orthodox_divisors, orthodox_model,
    parse_model, ExtElem, KernelModel, ModelSpec, Part, Role,
};
pub use theta::{enumerate_words, LambdaIndex, Letter, Word};
