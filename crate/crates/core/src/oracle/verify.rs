//! Certificate re-checks from raw offsets.
//!
//! Each verifier returns `Ok(false)` when a recorded fact does not hold and
//! an error when the certificate names a member the instance does not have.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{HellyError, Result};
use crate::fractional::{
    big_to_string, binomial, c_k, count_chain_tuples, min_q, multipartite_t, prefix_size,
    FractionalWitness, KPlusOneWitness, PairsWitness, PiercingFamily,
};
use crate::hsystem::{intersect, offsets_leq, ColorClasses, Family, HSet, MemberId};
use crate::properties::MonotoneProperty;
use crate::rational::Rational;
use crate::selection::{
    chain_is_monotone, es_bound, weak_required_size, ChainWitness, SelectionWitness,
};

use super::brute::Combinations;
use super::limits::{gate, OracleLimits};

fn lookup<'a>(family: &'a Family, id: &MemberId) -> Result<&'a HSet> {
    family.by_id(id)
}

fn distinct(ids: &[MemberId]) -> bool {
    let mut seen = HashSet::new();
    ids.iter().all(|id| seen.insert(id))
}

/// At most `k` distinct members whose intersection equals the family's.
pub fn verify_strong(family: &Family, ids: &[MemberId]) -> Result<bool> {
    let sets = ids
        .iter()
        .map(|id| lookup(family, id))
        .collect::<Result<Vec<_>>>()?;
    if sets.is_empty() || !distinct(ids) || ids.len() > family.system().k() {
        return Ok(false);
    }
    Ok(intersect(sets)?.offsets() == family.intersection()?.offsets())
}

fn chosen_sets<'a>(
    classes: &'a ColorClasses,
    w: &SelectionWitness,
) -> Result<Option<Vec<&'a HSet>>> {
    if w.chosen.len() != classes.len() {
        return Ok(None);
    }
    w.chosen
        .iter()
        .enumerate()
        .map(|(c, id)| lookup(classes.class(c), id))
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

/// Checks every `via` comparison for the listed members of the pivot class.
fn check_certificate(
    classes: &ColorClasses,
    w: &SelectionWitness,
    chosen: &[&HSet],
) -> Result<bool> {
    let k = classes.system().k();
    let pivot = classes.class(w.pivot_class);
    let members: Vec<MemberId> = w.certificate.iter().map(|m| m.member.clone()).collect();
    if !distinct(&members) {
        return Ok(false);
    }
    for cert in &w.certificate {
        let member = lookup(pivot, &cert.member)?;
        if cert.via.len() != k || cert.via != w.permutation {
            return Ok(false);
        }
        for (i, &c) in cert.via.iter().enumerate() {
            if c >= chosen.len() || chosen[c].offset(i) > member.offset(i) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Colorful selection: `k` classes, a permutation ending in the pivot, and a
/// certificate covering the whole pivot class.
pub fn verify_colorful(classes: &ColorClasses, w: &SelectionWitness) -> Result<bool> {
    let k = classes.system().k();
    if classes.len() != k || w.permutation.len() != k {
        return Ok(false);
    }
    let Some(chosen) = chosen_sets(classes, w)? else {
        return Ok(false);
    };
    let perm: BTreeSet<usize> = w.permutation.iter().copied().collect();
    if perm != (0..k).collect() || w.pivot_class != w.permutation[k - 1] {
        return Ok(false);
    }
    let covered: BTreeSet<&MemberId> = w.certificate.iter().map(|m| &m.member).collect();
    let pivot_ids: BTreeSet<&MemberId> = classes.class(w.pivot_class).ids().iter().collect();
    if !check_certificate(classes, w, &chosen)? {
        return Ok(false);
    }
    Ok(covered == pivot_ids && w.certificate.len() == pivot_ids.len())
}

/// Weak colorful selection with its pruned pivot class.
pub fn verify_weak(
    classes: &ColorClasses,
    w: &SelectionWitness,
    pruned: &[MemberId],
) -> Result<bool> {
    let kk = classes.system().k();
    if kk % 2 == 0 {
        return Ok(false);
    }
    let k = (kk - 1) / 2;
    if classes.len() != k + 1 || w.pivot_class >= classes.len() || w.permutation.len() != kk {
        return Ok(false);
    }
    if w.permutation.iter().any(|&c| c >= classes.len()) {
        return Ok(false);
    }
    let Some(chosen) = chosen_sets(classes, w)? else {
        return Ok(false);
    };
    let pivot = classes.class(w.pivot_class);
    for id in pruned {
        lookup(pivot, id)?;
    }
    if pruned.is_empty() || !distinct(pruned) {
        return Ok(false);
    }
    let Some(factor) = weak_required_size(k) else {
        return Ok(false);
    };
    if (pruned.len() as u128)
        .checked_mul(factor)
        .is_some_and(|x| x < pivot.len() as u128)
    {
        return Ok(false);
    }
    let covered: BTreeSet<&MemberId> = w.certificate.iter().map(|m| &m.member).collect();
    let expected: BTreeSet<&MemberId> = pruned.iter().collect();
    if covered != expected || w.certificate.len() != pruned.len() {
        return Ok(false);
    }
    check_certificate(classes, w, &chosen)
}

/// A chain of at least two distinct members, monotone per its profile, whose
/// intersection is that of its ends.
pub fn verify_chain(family: &Family, w: &ChainWitness) -> Result<bool> {
    let chain: Vec<HSet> = w
        .ids
        .iter()
        .map(|id| lookup(family, id).cloned())
        .collect::<Result<_>>()?;
    if chain.len() < 2 || !distinct(&w.ids) || w.direction_profile.len() != family.system().k() {
        return Ok(false);
    }
    if !chain_is_monotone(&chain, &w.direction_profile) {
        return Ok(false);
    }
    let ends = intersect([&chain[0], &chain[chain.len() - 1]])?;
    Ok(ends == intersect(&chain)?)
}

/// Recomputes prefixes, survivors and the subfamily from offsets and re-evaluates `P`.
pub fn verify_fractional(
    family: &Family,
    p: &MonotoneProperty,
    w: &FractionalWitness,
) -> Result<bool> {
    let n = family.len();
    let k = family.system().k();
    for id in w
        .prefixes
        .iter()
        .flatten()
        .chain(&w.witness_tuple)
        .chain(&w.survivors)
        .chain(&w.subfamily)
    {
        lookup(family, id)?;
    }
    if n == 0 || !w.alpha.is_positive() || w.alpha > Rational::ONE {
        return Ok(false);
    }
    let m = prefix_size(n, k, w.alpha)?;
    if Rational::from_counts(m as u128, n as u128) != Some(w.gamma) || w.prefixes.len() != k {
        return Ok(false);
    }
    for (i, pre) in w.prefixes.iter().enumerate() {
        let expect: Vec<MemberId> = family.sorted_by(i)[..m]
            .iter()
            .map(|&x| family.id(x).clone())
            .collect();
        if *pre != expect {
            return Ok(false);
        }
    }
    if w.witness_tuple.len() != k
        || w.witness_tuple
            .iter()
            .zip(&w.prefixes)
            .any(|(id, pre)| !pre.contains(id))
    {
        return Ok(false);
    }
    let tuple = w
        .witness_tuple
        .iter()
        .map(|id| lookup(family, id))
        .collect::<Result<Vec<_>>>()?;
    let witness = intersect(tuple)?;
    if !p.eval(&witness)? {
        return Ok(false);
    }
    let in_prefix: HashSet<&MemberId> = w.prefixes.iter().flatten().collect();
    let survivors: Vec<&MemberId> = family
        .ids()
        .iter()
        .filter(|id| !in_prefix.contains(id))
        .collect();
    if survivors != w.survivors.iter().collect::<Vec<_>>() {
        return Ok(false);
    }
    let sub: Vec<&MemberId> = family
        .iter()
        .filter(|(_, s)| offsets_leq(witness.offsets(), s.offsets()))
        .map(|(id, _)| id)
        .collect();
    if sub != w.subfamily.iter().collect::<Vec<_>>() || sub.is_empty() {
        return Ok(false);
    }
    if Rational::from_counts(sub.len() as u128, n as u128) != Some(w.beta_achieved) {
        return Ok(false);
    }
    let members = w
        .subfamily
        .iter()
        .map(|id| lookup(family, id))
        .collect::<Result<Vec<_>>>()?;
    p.eval(&intersect(members)?)
}

/// The `(k+1)`-tuple pipeline: multipartite copies, weak colorful selections,
/// the certified tuple count, and the final fractional witness.
pub fn verify_kplus1(
    family: &Family,
    p: &MonotoneProperty,
    w: &KPlusOneWitness,
    limits: &OracleLimits,
) -> Result<bool> {
    let kk = family.system().k();
    if kk % 2 == 0 || w.copies.is_empty() {
        return Ok(false);
    }
    let k = (kk - 1) / 2;
    let Some(min_t) = weak_required_size(k) else {
        return Ok(false);
    };
    if u128::from(w.t) < min_t || w.t_formula != multipartite_t(k).to_string() {
        return Ok(false);
    }
    if !w.alpha.is_positive() || w.alpha > Rational::ONE {
        return Ok(false);
    }
    let t = usize::try_from(w.t).map_err(|_| HellyError::Overflow("t"))?;
    let transversals = (t as u128).checked_pow((k + 1) as u32).unwrap_or(u128::MAX);
    gate(
        "multipartite transversals",
        transversals,
        limits.max_product,
    )?;

    let mut used: HashSet<&MemberId> = HashSet::new();
    let mut tuples: BTreeSet<Vec<usize>> = BTreeSet::new();
    for copy in &w.copies {
        if copy.classes.len() != k + 1 || copy.classes.iter().any(|c| c.len() != t) {
            return Ok(false);
        }
        for id in copy.classes.iter().flatten() {
            lookup(family, id)?;
            if !used.insert(id) {
                return Ok(false);
            }
        }
        let class_sets: Vec<Vec<&HSet>> = copy
            .classes
            .iter()
            .map(|c| {
                c.iter()
                    .map(|id| lookup(family, id))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        if !all_transversals(&class_sets, p)? {
            return Ok(false);
        }
        if copy.selection.len() != k + 1 || copy.pivot_class > k || copy.pruned.is_empty() {
            return Ok(false);
        }
        if copy
            .selection
            .iter()
            .zip(&copy.classes)
            .any(|(id, c)| !c.contains(id))
        {
            return Ok(false);
        }
        if copy
            .pruned
            .iter()
            .any(|id| !copy.classes[copy.pivot_class].contains(id))
            || !distinct(&copy.pruned)
        {
            return Ok(false);
        }
        if (copy.pruned.len() as u128) * min_t < t as u128 {
            return Ok(false);
        }
        let sel = intersect(
            copy.selection
                .iter()
                .map(|id| lookup(family, id))
                .collect::<Result<Vec<_>>>()?,
        )?;
        if !p.eval(&sel)? {
            return Ok(false);
        }
        for id in &copy.pruned {
            if !offsets_leq(sel.offsets(), lookup(family, id)?.offsets()) {
                return Ok(false);
            }
        }
        let mut union = family.positions_of(&copy.selection)?;
        union.extend(family.positions_of(&copy.pruned)?);
        union.sort_unstable();
        union.dedup();
        let pool = union.len();
        for combo in Combinations::new(pool, kk) {
            tuples.insert(combo.iter().map(|&i| union[i]).collect());
        }
    }
    if tuples.len() as u64 != w.certified_tuples {
        return Ok(false);
    }
    let total =
        binomial(family.len() as u128, kk as u128).ok_or(HellyError::Overflow("binomial"))?;
    if Rational::from_counts(u128::from(w.certified_tuples), total) != Some(w.alpha_certified) {
        return Ok(false);
    }
    if w.fractional.alpha != w.alpha_certified {
        return Ok(false);
    }
    verify_fractional(family, p, &w.fractional)
}

fn all_transversals(classes: &[Vec<&HSet>], p: &MonotoneProperty) -> Result<bool> {
    let mut idx = vec![0usize; classes.len()];
    loop {
        let sets: Vec<&HSet> = idx
            .iter()
            .enumerate()
            .map(|(c, &i)| classes[c][i])
            .collect();
        if !p.eval(&intersect(sets)?)? {
            return Ok(false);
        }
        let mut j = 0;
        loop {
            if j == idx.len() {
                return Ok(true);
            }
            idx[j] += 1;
            if idx[j] < classes[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// The pair pipeline: constants, the `alpha'` shift, the certified count, and the fractional witness.
pub fn verify_pairs(family: &Family, p: &MonotoneProperty, w: &PairsWitness) -> Result<bool> {
    let k = family.system().k();
    if k < 2 {
        return Ok(false);
    }
    let c = c_k(k);
    if w.c_k != big_to_string(&c) || w.chain_bound != es_bound(k, k as u64).to_string() {
        return Ok(false);
    }
    let one = BigRational::one();
    let a = w.alpha.to_big();
    if a <= &one - &c || a > one {
        return Ok(false);
    }
    if w.alpha_prime.to_big() != &a + &c - &one {
        return Ok(false);
    }
    if count_chain_tuples(family, p, k)? != u128::from(w.certified_tuples) {
        return Ok(false);
    }
    let total =
        binomial(family.len() as u128, k as u128).ok_or(HellyError::Overflow("binomial"))?;
    let lhs = BigInt::from(w.certified_tuples) * BigInt::from(w.alpha_prime.denom());
    let rhs = BigInt::from(total) * BigInt::from(w.alpha_prime.numer());
    if lhs < rhs || w.fractional.alpha != w.alpha_prime {
        return Ok(false);
    }
    verify_fractional(family, p, &w.fractional)
}

/// Every pin satisfies `P` and every member contains its assigned pin.
pub fn verify_piercing(family: &Family, p: &MonotoneProperty, pf: &PiercingFamily) -> Result<bool> {
    for id in pf.cover.keys() {
        lookup(family, id)?;
    }
    if pf.q < min_q(family) || pf.p < pf.q || pf.pins.is_empty() || pf.greedy_size < pf.pins.len() {
        return Ok(false);
    }
    let k = family.system().k();
    let mut pins = Vec::with_capacity(pf.pins.len());
    for o in &pf.pins {
        if o.len() != k {
            return Ok(false);
        }
        let pin = HSet::new(std::sync::Arc::clone(family.system()), o.clone())?;
        if !p.eval(&pin)? {
            return Ok(false);
        }
        pins.push(pin);
    }
    if pf.cover.len() != family.len() {
        return Ok(false);
    }
    for (id, &j) in &pf.cover {
        if j >= pins.len() || !offsets_leq(pins[j].offsets(), lookup(family, id)?.offsets()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `subset` has `p` distinct members and none of its `q`-subsets is `P`-intersecting.
pub fn verify_hypothesis_failure(
    family: &Family,
    prop: &MonotoneProperty,
    subset: &[MemberId],
    p: usize,
    q: usize,
) -> Result<bool> {
    let sets = subset
        .iter()
        .map(|id| lookup(family, id))
        .collect::<Result<Vec<_>>>()?;
    if sets.len() != p || !distinct(subset) || q > p || q < min_q(family) {
        return Ok(false);
    }
    for combo in Combinations::new(p, q) {
        if prop.eval(&intersect(combo.iter().map(|&i| sets[i]))?)? {
            return Ok(false);
        }
    }
    Ok(true)
}
