use crate::error::{HellyError, Result};
use crate::hsystem::{ColorClasses, Family};

use super::split::consistent_grid;
use super::{cross_key, MemberCertificate, SelectionWitness};

/// Output of [`weak_colorful_helly`].
#[derive(Debug, Clone)]
pub struct WeakColorfulWitness {
    pub selection: SelectionWitness,
    /// The pruned pivot class `B'_l`; every member is covered by the certificate.
    pub pruned: Family,
    /// The pairwise consistent classes the selection was made from.
    pub grid: ColorClasses,
    /// `minimal_block[i]` is the grid class containing the minimum under ordering `i`.
    pub minimal_block: Vec<usize>,
    pub original_sizes: Vec<usize>,
}

/// Minimum class size `2^(k(2k+1)+1)` for `k + 1` classes over `2k + 1` halfspaces.
pub fn weak_required_size(k: usize) -> Option<u128> {
    let exp = k.checked_mul(2 * k + 1)?.checked_add(1)?;
    if exp >= 127 {
        return None;
    }
    Some(1u128 << exp)
}

/// Weak colorful Helly for `k + 1` classes over a `(2k + 1)`-halfspace system.
///
/// After making every class pair consistent, some class is the minimal block
/// under at most one ordering. That class is the pivot; it contributes its
/// minimum under that ordering (or its first member), the other classes
/// contribute their first member.
pub fn weak_colorful_helly(classes: &ColorClasses) -> Result<WeakColorfulWitness> {
    let kk = classes.system().k();
    if kk % 2 == 0 {
        return Err(HellyError::WrongHalfspaceCount(kk));
    }
    let k = (kk - 1) / 2;
    classes.require_count(k + 1)?;
    let required = weak_required_size(k).ok_or(HellyError::TooLarge {
        what: "weak colorful class bound exponent",
        size: (k as u128) * (2 * k as u128 + 1) + 1,
        limit: 126,
    })?;
    for (c, class) in classes.classes().iter().enumerate() {
        if (class.len() as u128) < required {
            return Err(HellyError::ClassTooSmall {
                class: c,
                size: class.len(),
                required,
            });
        }
    }

    let grid = consistent_grid(classes)?;
    let fams = grid.classes();
    let minimal_block: Vec<usize> = (0..kk)
        .map(|i| {
            (0..fams.len())
                .flat_map(|c| (0..fams[c].len()).map(move |p| (c, p)))
                .min_by(|&(ca, pa), &(cb, pb)| {
                    cross_key(fams, ca, pa, i).cmp(&cross_key(fams, cb, pb, i))
                })
                .map(|(c, _)| c)
                .expect("grid classes are nonempty")
        })
        .collect();

    let pivot = (0..=k)
        .find(|&c| minimal_block.iter().filter(|&&m| m == c).count() <= 1)
        .expect("k + 1 classes cannot each be minimal in two of 2k + 1 orderings");
    let pivot_pick = match minimal_block.iter().position(|&m| m == pivot) {
        Some(j) => fams[pivot].argmin(j).expect("nonempty"),
        None => 0,
    };

    let chosen = (0..=k)
        .map(|c| {
            let p = if c == pivot { pivot_pick } else { 0 };
            fams[c].id(p).clone()
        })
        .collect();
    let certificate = fams[pivot]
        .ids()
        .iter()
        .map(|id| MemberCertificate {
            member: id.clone(),
            via: minimal_block.clone(),
        })
        .collect();
    let pruned = fams[pivot].clone();
    Ok(WeakColorfulWitness {
        selection: SelectionWitness {
            chosen,
            pivot_class: pivot,
            permutation: minimal_block.clone(),
            certificate,
        },
        pruned,
        original_sizes: classes.classes().iter().map(Family::len).collect(),
        grid,
        minimal_block,
    })
}
