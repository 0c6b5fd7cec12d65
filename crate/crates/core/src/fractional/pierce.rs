use std::collections::BTreeMap;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{HellyError, Result};
use crate::hsystem::{min_into, offsets_leq, Family, HSet, MemberId};
use crate::properties::{MonotoneProperty, PreparedProperty};
use crate::rational::Rational;

use super::enumerate::{binomial, for_each_intersecting};

/// Largest number of `p`-subsets the hypothesis scan will visit.
pub const MAX_HYPOTHESIS_SUBSETS: u128 = 1_000_000;
/// Largest family the bitmask-based search accepts.
pub const MAX_PIERCE_FAMILY: usize = 20;
/// Cover combinations tried when improving on the greedy cover.
pub const IMPROVEMENT_BUDGET: u64 = 2_000_000;

/// Pins satisfying `P`, with every member assigned a pin it contains.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiercingFamily {
    pub pins: Vec<Vec<Rational>>,
    pub cover: BTreeMap<MemberId, usize>,
    pub greedy_size: usize,
    pub p: usize,
    pub q: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PierceOutcome {
    Pierced(PiercingFamily),
    /// A `p`-subset none of whose `q`-subsets is `P`-intersecting.
    HypothesisFailed(Vec<MemberId>),
}

/// Smallest admissible `q`: `d + 1` for boxes, `k + 1` for other systems.
pub fn min_q(family: &Family) -> usize {
    let sys = family.system();
    if sys.is_box_system() {
        sys.dim() + 1
    } else {
        sys.k() + 1
    }
}

/// Desk-scale `(p, q)` piercing.
///
/// Checks the hypothesis over every `p`-subset, then covers the family with
/// intersections of maximal `P`-intersecting subfamilies: greedily first,
/// then by exhaustive search for a smaller cover within a fixed budget.
pub fn pq_pierce(
    family: &Family,
    p_prop: &MonotoneProperty,
    p: usize,
    q: usize,
) -> Result<PierceOutcome> {
    let n = family.len();
    if q < min_q(family) || p < q {
        return Err(HellyError::InvalidParameter(format!(
            "need p >= q >= {}, got p = {p}, q = {q}",
            min_q(family)
        )));
    }
    if n == 0 {
        return Err(HellyError::Empty("piercing an empty family"));
    }
    if n > MAX_PIERCE_FAMILY {
        return Err(HellyError::TooLarge {
            what: "piercing family",
            size: n as u128,
            limit: MAX_PIERCE_FAMILY as u128,
        });
    }
    let subsets = binomial(n as u128, p as u128).unwrap_or(u128::MAX);
    if subsets > MAX_HYPOTHESIS_SUBSETS {
        return Err(HellyError::TooLarge {
            what: "p-subset scan",
            size: subsets,
            limit: MAX_HYPOTHESIS_SUBSETS,
        });
    }
    let prop = p_prop.prepare(family.system())?;

    if let Some(bad) = hypothesis_violation(family, &prop, p, q) {
        return Ok(PierceOutcome::HypothesisFailed(
            bad.into_iter().map(|i| family.id(i).clone()).collect(),
        ));
    }
    for i in 0..n {
        if !prop.holds(family.offsets(i)) {
            return Err(HellyError::Unpierceable(family.id(i).clone()));
        }
    }

    let maximal = maximal_intersecting(family, &prop);
    let pins: Vec<Vec<Rational>> = maximal
        .iter()
        .map(|&mask| mask_intersection(family, mask))
        .collect();
    let covers: Vec<u64> = pins
        .iter()
        .map(|pin| {
            (0..n)
                .filter(|&i| offsets_leq(pin, family.offsets(i)))
                .fold(0u64, |m, i| m | 1 << i)
        })
        .collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };

    let greedy = greedy_cover(&covers, full);
    let best = improve(&covers, full, greedy.len()).unwrap_or(greedy.clone());

    let mut cover = BTreeMap::new();
    for i in 0..n {
        let j = best
            .iter()
            .position(|&c| covers[c] >> i & 1 == 1)
            .expect("cover is total");
        cover.insert(family.id(i).clone(), j);
    }
    Ok(PierceOutcome::Pierced(PiercingFamily {
        pins: best.iter().map(|&c| pins[c].clone()).collect(),
        cover,
        greedy_size: greedy.len(),
        p,
        q,
    }))
}

/// The first `p`-subset (lexicographic) containing no `P`-intersecting `q`-subset.
fn hypothesis_violation(
    family: &Family,
    prop: &PreparedProperty,
    p: usize,
    q: usize,
) -> Option<Vec<usize>> {
    let n = family.len();
    if p > n {
        return None;
    }
    let mut good: Vec<u64> = Vec::new();
    let _ = for_each_intersecting(family, q, prop, |s| {
        good.push(s.iter().fold(0u64, |m, &i| m | 1 << i));
        ControlFlow::Continue(())
    });
    let mut subset: Vec<usize> = (0..p).collect();
    loop {
        let mask = subset.iter().fold(0u64, |m, &i| m | 1 << i);
        if !good.iter().any(|&g| g & mask == g) {
            return Some(subset);
        }
        let mut i = p;
        while i > 0 && subset[i - 1] == n - p + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return None;
        }
        subset[i - 1] += 1;
        for j in i..p {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

fn mask_intersection(family: &Family, mask: u64) -> Vec<Rational> {
    let mut acc: Option<Vec<Rational>> = None;
    for i in 0..family.len() {
        if mask >> i & 1 == 1 {
            match &mut acc {
                None => acc = Some(family.offsets(i).to_vec()),
                Some(a) => min_into(a, family.offsets(i)),
            }
        }
    }
    acc.expect("nonempty mask")
}

/// Maximal `P`-intersecting subfamilies as bitmasks, in discovery order.
fn maximal_intersecting(family: &Family, prop: &PreparedProperty) -> Vec<u64> {
    let n = family.len();
    let mut found: Vec<u64> = Vec::new();
    let mut stack: Vec<(u64, usize, Vec<Rational>)> = Vec::new();
    for i in 0..n {
        if prop.holds(family.offsets(i)) {
            stack.push((1 << i, i + 1, family.offsets(i).to_vec()));
        }
    }
    // depth-first over sets extended by larger indices; a set is maximal when no
    // member at all can be added
    stack.reverse();
    while let Some((mask, next, acc)) = stack.pop() {
        let mut extendable_any = false;
        let mut buf = acc.clone();
        for j in 0..n {
            if mask >> j & 1 == 1 {
                continue;
            }
            buf.copy_from_slice(&acc);
            min_into(&mut buf, family.offsets(j));
            if prop.holds(&buf) {
                extendable_any = true;
                if j >= next {
                    stack.push((mask | 1 << j, j + 1, buf.clone()));
                }
            }
        }
        if !extendable_any {
            found.push(mask);
        }
    }
    found.sort_unstable();
    found.dedup();
    found
}

fn greedy_cover(covers: &[u64], full: u64) -> Vec<usize> {
    let mut covered = 0u64;
    let mut chosen = Vec::new();
    while covered != full {
        let best = (0..covers.len())
            .max_by_key(|&c| ((covers[c] & !covered).count_ones(), std::cmp::Reverse(c)))
            .expect("candidates cover every member");
        chosen.push(best);
        covered |= covers[best];
    }
    chosen
}

/// Smallest cover below `greedy` pins, if found within the budget.
fn improve(covers: &[u64], full: u64, greedy: usize) -> Option<Vec<usize>> {
    let mut steps = 0u64;
    let mut best = None;
    for size in 1..greedy {
        let mut cur = Vec::with_capacity(size);
        match search_cover(covers, full, size, 0, 0, &mut cur, &mut steps) {
            Some(true) => {
                best = Some(cur);
                break;
            }
            Some(false) => {}
            None => break,
        }
    }
    best
}

fn search_cover(
    covers: &[u64],
    full: u64,
    size: usize,
    start: usize,
    covered: u64,
    cur: &mut Vec<usize>,
    steps: &mut u64,
) -> Option<bool> {
    if covered == full {
        return Some(true);
    }
    if cur.len() == size {
        return Some(false);
    }
    // the lowest uncovered member must be covered by some later pin
    let need = (!covered & full).trailing_zeros();
    for c in start..covers.len() {
        *steps += 1;
        if *steps > IMPROVEMENT_BUDGET {
            return None;
        }
        if covers[c] >> need & 1 == 0 {
            continue;
        }
        cur.push(c);
        match search_cover(covers, full, size, 0, covered | covers[c], cur, steps)? {
            true => return Some(true),
            false => {
                cur.pop();
            }
        }
    }
    Some(false)
}

/// Pins as sets over the family's system.
pub fn pin_sets(family: &Family, pf: &PiercingFamily) -> Result<Vec<HSet>> {
    pf.pins
        .iter()
        .map(|o| HSet::new(std::sync::Arc::clone(family.system()), o.clone()))
        .collect()
}
