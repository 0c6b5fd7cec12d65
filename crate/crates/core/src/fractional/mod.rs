//! Fractional Helly pipelines and desk-scale `(p, q)` piercing.

mod bounds;
mod enumerate;
mod hypergraph;
mod k;
mod kplus1;
mod pairs;
mod pierce;

pub use bounds::{
    big_binomial, big_to_string, c_k, meets_fractional_bound, multipartite_t, prefix_size,
};
pub use enumerate::{binomial, count_intersecting, density, for_each_intersecting};
pub use hypergraph::{build_hypergraph, find_multipartite, is_complete_multipartite, Hypergraph};
pub use k::{fractional_k, FractionalWitness, SearchMode};
pub use kplus1::{
    fractional_kplus1, odd_system, KPlusOneOptions, KPlusOneWitness, MultipartiteCopy,
};
pub use pairs::{count_chain_tuples, fractional_pairs, PairsWitness};
pub use pierce::{
    min_q, pin_sets, pq_pierce, PierceOutcome, PiercingFamily, IMPROVEMENT_BUDGET,
    MAX_HYPOTHESIS_SUBSETS, MAX_PIERCE_FAMILY,
};
