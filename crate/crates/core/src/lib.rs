//! Constructive Helly-type selection for monotone properties of axis-parallel
//! boxes and, more generally, H-convex sets.
//!
//! Every algorithm returns a certificate that the [`oracle`] module can
//! re-check from raw offsets alone.

pub mod constructions;
pub mod error;
pub mod fractional;
pub mod hsystem;
pub mod oracle;
pub mod properties;
pub mod rational;
pub mod selection;

pub use constructions::{generate, GenSpec, Generated};
pub use error::{HellyError, Result};
pub use fractional::{
    density, fractional_k, fractional_kplus1, fractional_pairs, pq_pierce, FractionalWitness,
    KPlusOneOptions, KPlusOneWitness, PairsWitness, PierceOutcome, PiercingFamily, SearchMode,
};
pub use hsystem::{
    box_to_hset, canonical_box_system, compare, hset_to_box, intersect, offset_leq, sequential_ids,
    AxisBox, ColorClasses, Family, HSet, HSystem, MemberId,
};
pub use properties::{box_volume, count_points, eval, feasible, hset_volume, MonotoneProperty};
pub use rational::Rational;
pub use selection::{
    chain_intersection, colorful_select, consistent_chain, consistent_grid, consistent_split,
    strong_helly_witness, weak_colorful_helly, ChainWitness, Direction, SelectionWitness,
    WeakColorfulWitness,
};
