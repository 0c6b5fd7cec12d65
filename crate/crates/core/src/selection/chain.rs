use std::cmp::Ordering;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{HellyError, Result};
use crate::hsystem::{intersect, Family, HSet, MemberId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Ascending,
    Descending,
}

/// A chain of members, monotone under every ordering in the recorded direction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainWitness {
    pub ids: Vec<MemberId>,
    pub direction_profile: Vec<Direction>,
}

/// The iterated Erdős–Szekeres bound `(target - 1)^(2^(k - 1)) + 1`.
///
/// Any family of at least this many members holds a consistent chain of length `target`.
pub fn es_bound(k: usize, target: u64) -> BigUint {
    if k == 0 {
        return BigUint::from(1u32);
    }
    let mut acc = BigUint::from(target.saturating_sub(1));
    for _ in 1..k {
        acc = &acc * &acc;
    }
    acc + 1u32
}

/// Finds a chain of `target` members ordered consistently under all orderings.
///
/// Members are sorted by ordering 0; each later ordering keeps a longest
/// ascending or descending subsequence (ascending on ties). `Ok(None)` when
/// fewer than `target` members survive.
pub fn consistent_chain(family: &Family, target: usize) -> Result<Option<ChainWitness>> {
    if target < 2 {
        return Err(HellyError::InvalidParameter(
            "chain target must be at least 2".into(),
        ));
    }
    let k = family.system().k();
    let mut seq = family.sorted_by(0);
    let mut profile = vec![Direction::Ascending];
    for i in 1..k {
        let asc = longest_monotone(&seq, |a, b| family.cmp_members(a, b, i));
        let desc = longest_monotone(&seq, |a, b| family.cmp_members(b, a, i));
        if desc.len() > asc.len() {
            seq = desc;
            profile.push(Direction::Descending);
        } else {
            seq = asc;
            profile.push(Direction::Ascending);
        }
        if seq.len() < target {
            return Ok(None);
        }
    }
    if seq.len() < target {
        return Ok(None);
    }
    seq.truncate(target);
    Ok(Some(ChainWitness {
        ids: seq.iter().map(|&p| family.id(p).clone()).collect(),
        direction_profile: profile,
    }))
}

/// Longest subsequence strictly increasing under `cmp`, earliest choice on ties.
fn longest_monotone<F>(seq: &[usize], cmp: F) -> Vec<usize>
where
    F: Fn(usize, usize) -> Ordering,
{
    let n = seq.len();
    let mut len = vec![1usize; n];
    let mut prev = vec![usize::MAX; n];
    for j in 0..n {
        for i in 0..j {
            if len[i] + 1 > len[j] && cmp(seq[i], seq[j]) == Ordering::Less {
                len[j] = len[i] + 1;
                prev[j] = i;
            }
        }
    }
    let Some(best) = len.iter().copied().max() else {
        return Vec::new();
    };
    let mut at = len.iter().position(|&l| l == best).expect("max exists");
    let mut out = Vec::with_capacity(best);
    loop {
        out.push(seq[at]);
        if prev[at] == usize::MAX {
            break;
        }
        at = prev[at];
    }
    out.reverse();
    out
}

/// Whether consecutive offsets along `chain` move in the recorded direction for every ordering.
pub fn chain_is_monotone(chain: &[HSet], profile: &[Direction]) -> bool {
    let Some(first) = chain.first() else {
        return true;
    };
    if profile.len() != first.system().k() {
        return false;
    }
    chain.windows(2).all(|w| {
        profile.iter().enumerate().all(|(i, dir)| {
            let (a, b) = (w[0].offset(i), w[1].offset(i));
            match dir {
                Direction::Ascending => a <= b,
                Direction::Descending => a >= b,
            }
        })
    })
}

/// Intersection of a consistently ordered chain, computed from its two ends.
pub fn chain_intersection(chain: &[HSet], witness: &ChainWitness) -> Result<HSet> {
    let (first, last) = match (chain.first(), chain.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(HellyError::Empty("chain intersection of an empty chain")),
    };
    if chain.len() != witness.ids.len() || !chain_is_monotone(chain, &witness.direction_profile) {
        return Err(HellyError::NotConsistentlyOrdered);
    }
    let ends = intersect([first, last])?;
    if ends != intersect(chain)? {
        return Err(HellyError::NotConsistentlyOrdered);
    }
    Ok(ends)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hsystem::AxisBox;

    #[test]
    fn bounds() {
        assert_eq!(es_bound(2, 3), BigUint::from(5u32));
        assert_eq!(es_bound(2, 2), BigUint::from(2u32));
        assert_eq!(es_bound(4, 3), BigUint::from(257u32));
        assert_eq!(es_bound(1, 7), BigUint::from(7u32));
    }

    #[test]
    fn nested_boxes_are_a_chain() {
        let boxes: Vec<AxisBox> = (1..=5)
            .map(|i| AxisBox::from_intervals(&[(-i, i), (-i, i)]).unwrap())
            .collect();
        let f = Family::from_boxes(&boxes).unwrap();
        let w = consistent_chain(&f, 3).unwrap().unwrap();
        assert_eq!(w.ids, f.ids()[..3].to_vec());
        assert!(w
            .direction_profile
            .iter()
            .all(|&d| d == Direction::Ascending));
        let chain: Vec<HSet> = f.members()[..3].to_vec();
        assert_eq!(chain_intersection(&chain, &w).unwrap(), f.members()[0]);
    }

    #[test]
    fn target_below_two_rejected() {
        let f = Family::from_boxes(&[AxisBox::from_intervals(&[(0, 1)]).unwrap()]).unwrap();
        assert!(consistent_chain(&f, 1).is_err());
        assert_eq!(consistent_chain(&f, 2).unwrap(), None);
    }

    #[test]
    fn tampered_profile_rejected() {
        let f = Family::from_boxes(&[
            AxisBox::from_intervals(&[(0, 1)]).unwrap(),
            AxisBox::from_intervals(&[(0, 2)]).unwrap(),
        ])
        .unwrap();
        let w = ChainWitness {
            ids: f.ids().to_vec(),
            direction_profile: vec![Direction::Descending, Direction::Ascending],
        };
        assert_eq!(
            chain_intersection(f.members(), &w),
            Err(HellyError::NotConsistentlyOrdered)
        );
    }
}
