//! Exhaustive ground truth. Every property check here goes through
//! [`MonotoneProperty::eval`] on a freshly built intersection.

use crate::error::{HellyError, Result};
use crate::fractional::binomial;
use crate::hsystem::{intersect, ColorClasses, Family, HSet, MemberId};
use crate::properties::MonotoneProperty;
use crate::rational::Rational;

use super::limits::{gate, OracleLimits};

/// Lexicographic `r`-combinations of `0..n`.
pub struct Combinations {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, r: usize) -> Self {
        Combinations {
            n,
            cur: (r <= n).then(|| (0..r).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let r = out.len();
        let c = self.cur.as_mut().expect("checked");
        let mut i = r;
        while i > 0 && c[i - 1] == self.n - r + i - 1 {
            i -= 1;
        }
        if i == 0 {
            self.cur = None;
        } else {
            c[i - 1] += 1;
            for j in i..r {
                c[j] = c[j - 1] + 1;
            }
        }
        Some(out)
    }
}

fn holds(p: &MonotoneProperty, sets: &[&HSet]) -> Result<bool> {
    p.eval(&intersect(sets.iter().copied())?)
}

/// A smallest subfamily with the same intersection, first in lexicographic order.
pub fn brute_min_witness(family: &Family, limits: &OracleLimits) -> Result<Vec<MemberId>> {
    let n = family.len();
    if n == 0 {
        return Err(HellyError::Empty("minimum witness of an empty family"));
    }
    gate("oracle family", n as u128, limits.max_family as u128)?;
    let target = family.intersection()?;
    for size in 1..=n {
        for combo in Combinations::new(n, size) {
            if family.intersection_of(&combo)? == target {
                return Ok(combo.iter().map(|&i| family.id(i).clone()).collect());
            }
        }
    }
    unreachable!("the whole family is a witness")
}

/// Outcome of the exhaustive colorful check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorfulReport {
    /// Every transversal selection is `P`-intersecting.
    pub hypothesis: bool,
    /// Classes that are `P`-intersecting.
    pub satisfying_classes: Vec<usize>,
    /// First failing selection, if any.
    pub counterexample: Option<Vec<MemberId>>,
}

impl ColorfulReport {
    pub fn conclusion(&self) -> bool {
        !self.satisfying_classes.is_empty()
    }

    /// The implication hypothesis => conclusion.
    pub fn consistent(&self) -> bool {
        !self.hypothesis || self.conclusion()
    }
}

pub fn brute_colorful(
    classes: &ColorClasses,
    p: &MonotoneProperty,
    limits: &OracleLimits,
) -> Result<ColorfulReport> {
    let sizes: Vec<usize> = classes.classes().iter().map(Family::len).collect();
    let product = sizes
        .iter()
        .try_fold(1u128, |acc, &s| acc.checked_mul(s as u128))
        .unwrap_or(u128::MAX);
    gate("colorful product", product, limits.max_product)?;
    let mut idx = vec![0usize; sizes.len()];
    let mut counterexample = None;
    'outer: loop {
        let sets: Vec<&HSet> = idx
            .iter()
            .enumerate()
            .map(|(c, &i)| classes.class(c).get(i))
            .collect();
        if !holds(p, &sets)? {
            counterexample = Some(
                idx.iter()
                    .enumerate()
                    .map(|(c, &i)| classes.class(c).id(i).clone())
                    .collect(),
            );
            break;
        }
        let mut j = 0;
        loop {
            if j == idx.len() {
                break 'outer;
            }
            idx[j] += 1;
            if idx[j] < sizes[j] {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
    let mut satisfying_classes = Vec::new();
    for (c, class) in classes.classes().iter().enumerate() {
        if p.eval(&class.intersection()?)? {
            satisfying_classes.push(c);
        }
    }
    Ok(ColorfulReport {
        hypothesis: counterexample.is_none(),
        satisfying_classes,
        counterexample,
    })
}

/// A largest `P`-intersecting subfamily, first in lexicographic order among the largest.
pub fn brute_best_subfamily(
    family: &Family,
    p: &MonotoneProperty,
    limits: &OracleLimits,
) -> Result<Vec<MemberId>> {
    let n = family.len();
    gate("oracle family", n as u128, limits.max_family as u128)?;
    for size in (1..=n).rev() {
        for combo in Combinations::new(n, size) {
            if p.eval(&family.intersection_of(&combo)?)? {
                return Ok(combo.iter().map(|&i| family.id(i).clone()).collect());
            }
        }
    }
    Ok(Vec::new())
}

/// Fewest `P`-intersecting blocks partitioning the family, if at most `bound`.
///
/// One pin pierces a block exactly when the block is `P`-intersecting, so this
/// is the minimum piercing number with `P`-satisfying pins.
pub fn brute_pierce(
    family: &Family,
    p: &MonotoneProperty,
    bound: usize,
    limits: &OracleLimits,
) -> Result<Option<Vec<Vec<MemberId>>>> {
    let n = family.len();
    gate("pierce family", n as u128, limits.max_pierce_family as u128)?;
    gate(
        "pierce bound",
        bound as u128,
        limits.max_pierce_bound as u128,
    )?;
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    for blocks in 1..=bound.min(n) {
        let mut assign = vec![0usize; n];
        if partition(family, p, blocks, 0, 0, &mut assign)? {
            let mut out = vec![Vec::new(); blocks];
            for (i, &b) in assign.iter().enumerate() {
                out[b].push(family.id(i).clone());
            }
            return Ok(Some(out));
        }
    }
    Ok(None)
}

/// Restricted-growth assignment of members `i..` to at most `blocks` blocks.
fn partition(
    family: &Family,
    p: &MonotoneProperty,
    blocks: usize,
    i: usize,
    used: usize,
    assign: &mut [usize],
) -> Result<bool> {
    let n = family.len();
    if i == n {
        return Ok(used == blocks);
    }
    if n - i < blocks - used {
        return Ok(false);
    }
    for b in 0..=used.min(blocks - 1) {
        assign[i] = b;
        let members: Vec<&HSet> = (0..=i)
            .filter(|&j| assign[j] == b)
            .map(|j| family.get(j))
            .collect();
        if !holds(p, &members)? {
            continue;
        }
        if partition(family, p, blocks, i + 1, used.max(b + 1), assign)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Density by naive enumeration in reverse lexicographic order.
pub fn brute_density(
    family: &Family,
    r: usize,
    p: &MonotoneProperty,
    limits: &OracleLimits,
) -> Result<Rational> {
    let n = family.len();
    if r == 0 || r > n {
        return Err(HellyError::InvalidParameter(format!(
            "need 1 <= r <= {n}, got {r}"
        )));
    }
    let total = binomial(n as u128, r as u128).ok_or(HellyError::Overflow("binomial"))?;
    gate("density enumeration", total, limits.max_product)?;
    let mut combos: Vec<Vec<usize>> = Combinations::new(n, r).collect();
    combos.reverse();
    let mut count = 0u128;
    for combo in combos {
        let sets: Vec<&HSet> = combo.iter().rev().map(|&i| family.get(i)).collect();
        if holds(p, &sets)? {
            count += 1;
        }
    }
    Rational::from_counts(count, total).ok_or(HellyError::Overflow("density"))
}

/// Whether any tuple with one member per prefix (repeats allowed) is `P`-intersecting.
pub fn brute_product_scan(
    family: &Family,
    p: &MonotoneProperty,
    prefixes: &[Vec<MemberId>],
    limits: &OracleLimits,
) -> Result<bool> {
    let sets: Vec<Vec<&HSet>> = prefixes
        .iter()
        .map(|pre| {
            pre.iter()
                .map(|id| family.by_id(id))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    if sets.iter().any(Vec::is_empty) {
        return Ok(false);
    }
    let product = sets
        .iter()
        .try_fold(1u128, |acc, s| acc.checked_mul(s.len() as u128))
        .unwrap_or(u128::MAX);
    gate("prefix product", product, limits.max_product)?;
    let mut idx = vec![0usize; sets.len()];
    loop {
        let tuple: Vec<&HSet> = idx.iter().enumerate().map(|(c, &i)| sets[c][i]).collect();
        if holds(p, &tuple)? {
            return Ok(true);
        }
        let mut j = 0;
        loop {
            if j == idx.len() {
                return Ok(false);
            }
            idx[j] += 1;
            if idx[j] < sets[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hsystem::AxisBox;

    fn intervals(iv: &[(i64, i64)]) -> Family {
        let b: Vec<AxisBox> = iv
            .iter()
            .map(|&x| AxisBox::from_intervals(&[x]).unwrap())
            .collect();
        Family::from_boxes(&b).unwrap()
    }

    #[test]
    fn combinations_count() {
        assert_eq!(Combinations::new(5, 2).count(), 10);
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn min_witness() {
        let l = OracleLimits::default();
        let f = intervals(&[(0, 5), (1, 4), (2, 6)]);
        assert_eq!(
            brute_min_witness(&f, &l).unwrap(),
            vec![MemberId::from("b1"), MemberId::from("b2")]
        );
        let single = intervals(&[(0, 5)]);
        assert_eq!(brute_min_witness(&single, &l).unwrap().len(), 1);
    }

    #[test]
    fn best_subfamily_and_pierce() {
        let l = OracleLimits::default();
        let f = intervals(&[(0, 1), (2, 3), (0, 3)]);
        let best = brute_best_subfamily(&f, &MonotoneProperty::NonEmpty, &l).unwrap();
        assert_eq!(best.len(), 2);
        let blocks = brute_pierce(&f, &MonotoneProperty::NonEmpty, 4, &l)
            .unwrap()
            .unwrap();
        assert_eq!(blocks.len(), 2);
        assert!(brute_pierce(&f, &MonotoneProperty::NonEmpty, 1, &l)
            .unwrap()
            .is_none());
    }

    #[test]
    fn density_matches() {
        let l = OracleLimits::default();
        let f = intervals(&[(0, 1), (2, 3), (0, 3)]);
        assert_eq!(
            brute_density(&f, 2, &MonotoneProperty::NonEmpty, &l).unwrap(),
            Rational::new(2, 3).unwrap()
        );
    }

    #[test]
    fn gates() {
        let l = OracleLimits {
            max_family: 2,
            ..Default::default()
        };
        let f = intervals(&[(0, 1), (2, 3), (0, 3)]);
        assert!(matches!(
            brute_min_witness(&f, &l),
            Err(HellyError::TooLarge { .. })
        ));
    }
}
