use crate::error::{HellyError, Result};
use crate::hsystem::ColorClasses;

use super::{cross_key, MemberCertificate, SelectionWitness};

/// Colorful selection for `k` classes over a `k`-halfspace system.
///
/// At step `i` the globally smallest member under ordering `i` among the
/// classes not yet used fixes `permutation[i]` and that class's pick. The
/// last remaining class is the pivot; its pick is its own minimum under the
/// last ordering. Every member of the pivot class then dominates the
/// selection's intersection coordinatewise.
pub fn colorful_select(classes: &ColorClasses) -> Result<SelectionWitness> {
    let k = classes.system().k();
    classes.require_count(k)?;
    let fams = classes.classes();
    if let Some(c) = fams.iter().position(|f| f.is_empty()) {
        return Err(HellyError::EmptyClass(c));
    }

    let mut remaining: Vec<usize> = (0..k).collect();
    let mut chosen_pos = vec![usize::MAX; k];
    let mut permutation = Vec::with_capacity(k);
    for i in 0..k {
        let (class, pos) = remaining
            .iter()
            .flat_map(|&c| (0..fams[c].len()).map(move |p| (c, p)))
            .min_by(|&(ca, pa), &(cb, pb)| {
                cross_key(fams, ca, pa, i).cmp(&cross_key(fams, cb, pb, i))
            })
            .expect("remaining classes are nonempty");
        permutation.push(class);
        chosen_pos[class] = pos;
        remaining.retain(|&c| c != class);
    }
    let pivot_class = permutation[k - 1];

    let certificate = fams[pivot_class]
        .ids()
        .iter()
        .map(|id| MemberCertificate {
            member: id.clone(),
            via: permutation.clone(),
        })
        .collect();
    let chosen = chosen_pos
        .iter()
        .enumerate()
        .map(|(c, &p)| fams[c].id(p).clone())
        .collect();
    Ok(SelectionWitness {
        chosen,
        pivot_class,
        permutation,
        certificate,
    })
}
