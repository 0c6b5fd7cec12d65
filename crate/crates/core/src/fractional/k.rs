use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{HellyError, Result};
use crate::hsystem::{min_into, offsets_leq, Family, MemberId};
use crate::properties::{MonotoneProperty, PreparedProperty};
use crate::rational::Rational;

use super::bounds::prefix_size;

/// How the prefix product is searched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SearchMode {
    /// Lexicographic over the product, pruning failed partial intersections.
    #[default]
    Exhaustive,
    /// Uniform random tuples from the product; `NotFound` after `samples` misses.
    Sampled { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalWitness {
    pub alpha: Rational,
    /// Prefix size divided by family size.
    pub gamma: Rational,
    /// `prefixes[i]`: the first members under ordering `i`.
    pub prefixes: Vec<Vec<MemberId>>,
    /// `witness_tuple[i]` is drawn from `prefixes[i]`; repeats are allowed.
    pub witness_tuple: Vec<MemberId>,
    /// Members outside every prefix.
    pub survivors: Vec<MemberId>,
    /// Every member containing the witness tuple's intersection; includes the survivors.
    pub subfamily: Vec<MemberId>,
    pub beta_achieved: Rational,
}

/// Fractional Helly for `k`-tuples over a `k`-halfspace system.
///
/// Takes the first `ceil(gamma n)` members under each ordering and looks for a
/// `P`-intersecting tuple with one member from each prefix. Each survivor
/// comes after the tuple's member in every ordering, so it contains the
/// tuple's intersection.
pub fn fractional_k(
    family: &Family,
    p: &MonotoneProperty,
    alpha: Rational,
    mode: SearchMode,
) -> Result<Option<FractionalWitness>> {
    let n = family.len();
    if n == 0 {
        return Err(HellyError::Empty("fractional selection on an empty family"));
    }
    let k = family.system().k();
    let m = prefix_size(n, k, alpha)?;
    let prop = p.prepare(family.system())?;
    let prefixes: Vec<Vec<usize>> = (0..k)
        .map(|i| {
            let mut order = family.sorted_by(i);
            order.truncate(m);
            order
        })
        .collect();

    let tuple = match mode {
        SearchMode::Exhaustive => search_product(family, &prefixes, &prop),
        SearchMode::Sampled { samples, seed } => {
            sample_product(family, &prefixes, &prop, samples, seed)
        }
    };
    let Some(tuple) = tuple else {
        return Ok(None);
    };

    let witness = family.intersection_of(&tuple)?;
    let mut in_prefix = vec![false; n];
    for &p in prefixes.iter().flatten() {
        in_prefix[p] = true;
    }
    let ids =
        |ps: &mut dyn Iterator<Item = usize>| ps.map(|p| family.id(p).clone()).collect::<Vec<_>>();
    let survivors = ids(&mut (0..n).filter(|&p| !in_prefix[p]));
    let sub_positions: Vec<usize> = (0..n)
        .filter(|&p| offsets_leq(witness.offsets(), family.offsets(p)))
        .collect();
    let beta_achieved = Rational::from_counts(sub_positions.len() as u128, n as u128)
        .ok_or(HellyError::Overflow("beta"))?;
    Ok(Some(FractionalWitness {
        alpha,
        gamma: Rational::from_counts(m as u128, n as u128).ok_or(HellyError::Overflow("gamma"))?,
        prefixes: prefixes
            .iter()
            .map(|pre| ids(&mut pre.iter().copied()))
            .collect(),
        witness_tuple: ids(&mut tuple.iter().copied()),
        survivors,
        subfamily: ids(&mut sub_positions.into_iter()),
        beta_achieved,
    }))
}

fn search_product(
    family: &Family,
    prefixes: &[Vec<usize>],
    prop: &PreparedProperty,
) -> Option<Vec<usize>> {
    let k = prefixes.len();
    if k == 0 {
        return None;
    }
    let mut acc = vec![vec![Rational::ZERO; family.system().k()]; k];
    let mut chosen = Vec::with_capacity(k);
    if descend(family, prefixes, prop, &mut chosen, &mut acc) {
        Some(chosen)
    } else {
        None
    }
}

fn descend(
    family: &Family,
    prefixes: &[Vec<usize>],
    prop: &PreparedProperty,
    chosen: &mut Vec<usize>,
    acc: &mut [Vec<Rational>],
) -> bool {
    let depth = chosen.len();
    if depth == prefixes.len() {
        return true;
    }
    for &p in &prefixes[depth] {
        let (before, rest) = acc.split_at_mut(depth);
        let slot = &mut rest[0];
        slot.copy_from_slice(family.offsets(p));
        if let Some(prev) = before.last() {
            min_into(slot, prev);
        }
        if !prop.holds(slot) {
            continue;
        }
        chosen.push(p);
        if descend(family, prefixes, prop, chosen, acc) {
            return true;
        }
        chosen.pop();
    }
    false
}

fn sample_product(
    family: &Family,
    prefixes: &[Vec<usize>],
    prop: &PreparedProperty,
    samples: u64,
    seed: u64,
) -> Option<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut offsets = vec![Rational::ZERO; family.system().k()];
    for _ in 0..samples {
        let tuple: Vec<usize> = prefixes
            .iter()
            .map(|pre| pre[rng.gen_range(0..pre.len())])
            .collect();
        offsets.copy_from_slice(family.offsets(tuple[0]));
        for &p in &tuple[1..] {
            min_into(&mut offsets, family.offsets(p));
        }
        if prop.holds(&offsets) {
            return Some(tuple);
        }
    }
    None
}
