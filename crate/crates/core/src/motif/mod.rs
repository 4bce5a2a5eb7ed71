//! Temporal motif taxonomy, enumeration and census.

mod census;
mod class;
mod engine;
mod static_motifs;

pub use census::{
    binned_census, bins_from_boundaries, bins_table, census, census_with, BinMode, CensusConfig, CensusResult,
};
pub use class::{
    assign_pair_roles, pair_roles, role_pair_label, role_pairs, MotifClass, MotifSize, PairClass, Role, TripleCategory,
    TripleClass,
};
pub use engine::{classify_pair, classify_triple, enumerate_motifs, MotifEngine, MotifInstance, MotifStream};
pub use static_motifs::{
    for_each_static_instance, static_census, static_projection, StaticCensus, StaticGraph, StaticInstance,
    StaticPattern,
};
