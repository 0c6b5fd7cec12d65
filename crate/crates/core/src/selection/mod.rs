//! Selection routines: strong Helly witnesses, colorful selection, consistent
//! splits and grids, weak colorful Helly, and consistently ordered chains.

mod chain;
mod colorful;
mod split;
mod strong;
mod weak;

use serde::{Deserialize, Serialize};

use crate::hsystem::MemberId;

pub use chain::{
    chain_intersection, chain_is_monotone, consistent_chain, es_bound, ChainWitness, Direction,
};
pub use colorful::colorful_select;
pub use split::{consistent_grid, consistent_pair, consistent_split, precedes, SplitDirection};
pub use strong::strong_helly_witness;
pub use weak::{weak_colorful_helly, weak_required_size, WeakColorfulWitness};

/// Per-coordinate evidence that the chosen sets' intersection lies inside `member`.
///
/// `via[i]` names the class whose chosen member has `i`-th offset at most
/// that of `member`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberCertificate {
    pub member: MemberId,
    pub via: Vec<usize>,
}

/// A transversal selection together with a containment certificate for one class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectionWitness {
    /// `chosen[c]` is the member picked from class `c`.
    pub chosen: Vec<MemberId>,
    pub pivot_class: usize,
    /// `permutation[i]` is the class responsible for ordering `i`.
    pub permutation: Vec<usize>,
    /// One entry per certified member of the pivot class.
    pub certificate: Vec<MemberCertificate>,
}

/// Comparison key across several families: offset, then id, then class index.
pub(crate) fn cross_key<'a>(
    classes: &'a [crate::hsystem::Family],
    class: usize,
    pos: usize,
    i: usize,
) -> (crate::rational::Rational, &'a MemberId, usize) {
    let f = &classes[class];
    (f.offsets(pos)[i], f.id(pos), class)
}
