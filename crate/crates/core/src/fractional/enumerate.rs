//! Enumeration of `P`-intersecting `r`-subsets and the density they define.

use std::ops::ControlFlow;

use crate::error::{HellyError, Result};
use crate::hsystem::{min_into, Family};
use crate::properties::{MonotoneProperty, PreparedProperty};
use crate::rational::Rational;

/// `C(n, r)`, or `None` if it overflows `u128`.
pub fn binomial(n: u128, r: u128) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

pub(crate) fn check_r(family: &Family, r: usize) -> Result<()> {
    if r == 0 {
        return Err(HellyError::InvalidParameter(
            "tuple size r must be positive".into(),
        ));
    }
    if r > family.len() {
        return Err(HellyError::InvalidParameter(format!(
            "tuple size {r} exceeds family size {}",
            family.len()
        )));
    }
    Ok(())
}

/// Visits every `P`-intersecting `r`-subset in lexicographic order of positions.
///
/// Partial intersections that already fail `P` are not extended.
pub fn for_each_intersecting<F>(
    family: &Family,
    r: usize,
    prop: &PreparedProperty,
    mut visit: F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = family.len();
    if r == 0 || r > n {
        return ControlFlow::Continue(());
    }
    let k = family.system().k();
    // acc[j] holds the intersection of the first j + 1 chosen members
    let mut acc: Vec<Vec<Rational>> = vec![vec![Rational::ZERO; k]; r];
    let mut chosen = Vec::with_capacity(r);
    descend(family, r, prop, 0, &mut chosen, &mut acc, &mut visit)
}

fn descend<F>(
    family: &Family,
    r: usize,
    prop: &PreparedProperty,
    start: usize,
    chosen: &mut Vec<usize>,
    acc: &mut [Vec<Rational>],
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let depth = chosen.len();
    let n = family.len();
    for p in start..=n - (r - depth) {
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
        let flow = if depth + 1 == r {
            visit(chosen)
        } else {
            descend(family, r, prop, p + 1, chosen, acc, visit)
        };
        chosen.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

/// Number of `P`-intersecting `r`-subsets.
pub fn count_intersecting(family: &Family, r: usize, p: &MonotoneProperty) -> Result<u128> {
    check_r(family, r)?;
    let prop = p.prepare(family.system())?;
    let mut count = 0u128;
    let _ = for_each_intersecting(family, r, &prop, |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    Ok(count)
}

/// Exact fraction of `r`-subsets whose intersection satisfies `P`.
pub fn density(family: &Family, r: usize, p: &MonotoneProperty) -> Result<Rational> {
    let count = count_intersecting(family, r, p)?;
    let total =
        binomial(family.len() as u128, r as u128).ok_or(HellyError::Overflow("binomial"))?;
    Rational::from_counts(count, total).ok_or(HellyError::Overflow("density"))
}
