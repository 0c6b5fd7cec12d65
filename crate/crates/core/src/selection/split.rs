use serde::{Deserialize, Serialize};

use crate::error::{HellyError, Result};
use crate::hsystem::{same_system, ColorClasses, Family};

/// Which output precedes the other under the split ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitDirection {
    FirstBeforeSecond,
    SecondBeforeFirst,
}

/// Halves two families so that one half entirely precedes the other under ordering `h`.
///
/// Ties on the offset are broken by member id and then by side (first family first),
/// so the precedence is strict in that total order.
pub fn consistent_split(
    f1: &Family,
    f2: &Family,
    h: usize,
) -> Result<(Family, Family, SplitDirection)> {
    if !same_system(f1.system(), f2.system()) {
        return Err(HellyError::MixedSystems);
    }
    if f1.is_empty() || f2.is_empty() {
        return Err(HellyError::Empty("consistent split of an empty family"));
    }
    f1.system().check_ordering(h)?;
    let (p1, p2, dir) = split_positions([f1, f2], [0, 1], h);
    Ok((f1.subfamily(&p1), f2.subfamily(&p2), dir))
}

/// Core of the split on positions. `sides` are the tie-break ranks of the two families.
fn split_positions(
    fams: [&Family; 2],
    sides: [usize; 2],
    h: usize,
) -> (Vec<usize>, Vec<usize>, SplitDirection) {
    let (m, n) = (fams[0].len(), fams[1].len());
    let mut union: Vec<(usize, usize)> = (0..m)
        .map(|p| (0, p))
        .chain((0..n).map(|p| (1, p)))
        .collect();
    union.sort_by(|&(sa, pa), &(sb, pb)| {
        let ka = (fams[sa].offsets(pa)[h], fams[sa].id(pa), sides[sa]);
        let kb = (fams[sb].offsets(pb)[h], fams[sb].id(pb), sides[sb]);
        ka.cmp(&kb)
    });
    let (x, y) = union.split_at((m + n) / 2);
    let pick = |part: &[(usize, usize)], side: usize, count: usize| -> Vec<usize> {
        part.iter()
            .filter(|&&(s, _)| s == side)
            .map(|&(_, p)| p)
            .take(count)
            .collect()
    };
    let a = x.iter().filter(|&&(s, _)| s == 0).count();
    if a >= m / 2 {
        (
            pick(x, 0, m / 2),
            pick(y, 1, n / 2),
            SplitDirection::FirstBeforeSecond,
        )
    } else {
        (
            pick(y, 0, m / 2),
            pick(x, 1, n / 2),
            SplitDirection::SecondBeforeFirst,
        )
    }
}

/// The exponent `e` with every class trimmed to `2^e` members and the number of halvings
/// each class undergoes in [`consistent_grid`].
pub(crate) fn grid_halvings(classes: usize, k: usize) -> Option<u32> {
    u32::try_from(classes.saturating_sub(1).checked_mul(k)?).ok()
}

/// Shrinks the classes until every pair is consistently ordered under every ordering.
///
/// Each class is first trimmed to the largest power of two not exceeding its size by
/// dropping its largest ids. Then the pairs `(a, b)`, `a < b`, are split in lexicographic
/// order with orderings innermost. Each class is halved `(c - 1) * k` times for `c`
/// classes, so classes must hold at least `2^((c - 1) k)` members.
pub fn consistent_grid(classes: &ColorClasses) -> Result<ColorClasses> {
    let k = classes.system().k();
    let c = classes.len();
    let halvings = grid_halvings(c, k)
        .filter(|&h| h < 127)
        .ok_or(HellyError::TooLarge {
            what: "grid halving schedule",
            size: (c as u128).saturating_mul(k as u128),
            limit: 126,
        })?;
    let required = 1u128 << halvings;

    let mut current: Vec<Family> = Vec::with_capacity(c);
    for (idx, class) in classes.classes().iter().enumerate() {
        let size = class.len();
        if (size as u128) < required {
            return Err(HellyError::ClassTooSmall {
                class: idx,
                size,
                required,
            });
        }
        let keep = 1usize << (usize::BITS - 1 - size.leading_zeros());
        let mut by_id: Vec<usize> = (0..size).collect();
        by_id.sort_by(|&a, &b| class.id(a).cmp(class.id(b)));
        by_id.truncate(keep);
        current.push(class.subfamily(&by_id));
    }

    for a in 0..c {
        for b in a + 1..c {
            for h in 0..k {
                let (pa, pb, _) = split_positions([&current[a], &current[b]], [a, b], h);
                let na = current[a].subfamily(&pa);
                let nb = current[b].subfamily(&pb);
                current[a] = na;
                current[b] = nb;
            }
        }
    }
    ColorClasses::new(current)
}

/// True when every member of `first` precedes every member of `second` under ordering `h`,
/// with ties broken by id and then by the given class ranks.
pub fn precedes(
    first: &Family,
    rank_first: usize,
    second: &Family,
    rank_second: usize,
    h: usize,
) -> bool {
    first.iter().all(|(ia, sa)| {
        second
            .iter()
            .all(|(ib, sb)| (sa.offsets()[h], ia, rank_first) < (sb.offsets()[h], ib, rank_second))
    })
}

/// True when the pair is ordered consistently under `h` in one direction or the other.
pub fn consistent_pair(a: &Family, rank_a: usize, b: &Family, rank_b: usize, h: usize) -> bool {
    precedes(a, rank_a, b, rank_b, h) || precedes(b, rank_b, a, rank_a, h)
}
