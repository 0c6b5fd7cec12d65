use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{HellyError, Result};
use crate::hsystem::{ColorClasses, Family, MemberId};
use crate::properties::MonotoneProperty;
use crate::rational::Rational;
use crate::selection::{weak_colorful_helly, weak_required_size};

use super::bounds::{check_alpha, multipartite_t};
use super::enumerate::binomial;
use super::hypergraph::{build_hypergraph, find_multipartite};
use super::k::{fractional_k, FractionalWitness, SearchMode};

/// Tuning for [`fractional_kplus1`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KPlusOneOptions {
    pub t_override: Option<u64>,
    /// Backtracking budget per multipartite search.
    pub budget: u64,
    /// Upper bound on vertex-disjoint multipartite copies to harvest.
    pub max_copies: usize,
    pub mode: SearchMode,
}

impl Default for KPlusOneOptions {
    fn default() -> Self {
        KPlusOneOptions {
            t_override: None,
            budget: 100_000,
            max_copies: 4,
            mode: SearchMode::Exhaustive,
        }
    }
}

/// One complete multipartite copy and the weak colorful selection made inside it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultipartiteCopy {
    pub classes: Vec<Vec<MemberId>>,
    /// One member per class; a hyperedge, hence `P`-intersecting.
    pub selection: Vec<MemberId>,
    pub pivot_class: usize,
    /// Pruned pivot class; each member contains the selection's intersection.
    pub pruned: Vec<MemberId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KPlusOneWitness {
    pub alpha: Rational,
    pub t: u64,
    pub t_formula: String,
    pub copies: Vec<MultipartiteCopy>,
    /// Number of distinct `(2k+1)`-subsets certified `P`-intersecting.
    pub certified_tuples: u64,
    pub alpha_certified: Rational,
    pub fractional: FractionalWitness,
}

/// Fractional Helly for `(k+1)`-tuples over a `(2k+1)`-halfspace system.
///
/// Builds the `P`-intersection hypergraph on `(k+1)`-subsets, extracts
/// vertex-disjoint copies of `K_{k+1}(t)`, and inside each runs weak colorful
/// Helly. A copy's selection together with its pruned pivot class is
/// `P`-intersecting, so all its `(2k+1)`-subsets are too. The certified
/// fraction of `(2k+1)`-subsets feeds [`fractional_k`].
pub fn fractional_kplus1(
    family: &Family,
    p: &MonotoneProperty,
    alpha: Rational,
    opts: KPlusOneOptions,
) -> Result<Option<KPlusOneWitness>> {
    let kk = family.system().k();
    if kk % 2 == 0 {
        return Err(HellyError::WrongHalfspaceCount(kk));
    }
    check_alpha(alpha)?;
    let k = (kk - 1) / 2;
    let r = k + 1;
    let n = family.len();
    if n < r {
        return Err(HellyError::InvalidParameter(format!(
            "family of {n} members has no {r}-subsets"
        )));
    }
    let formula = multipartite_t(k);
    let min_t = weak_required_size(k).ok_or(HellyError::Overflow("class size bound"))?;
    let t = match opts.t_override {
        Some(t) => {
            if u128::from(t) < min_t {
                return Err(HellyError::InvalidParameter(format!(
                    "t_override {t} below the weak colorful class bound {min_t}"
                )));
            }
            t
        }
        None => match formula.to_u64() {
            Some(t) => t,
            None => return Ok(None),
        },
    };
    let t_usize = usize::try_from(t).map_err(|_| HellyError::Overflow("t"))?;
    if r.checked_mul(t_usize).map_or(true, |need| need > n) {
        return Ok(None);
    }

    let graph = build_hypergraph(family, r, p)?;
    let mut allowed = vec![true; n];
    let mut copies = Vec::new();
    let mut tuples: BTreeSet<Vec<usize>> = BTreeSet::new();
    while copies.len() < opts.max_copies.max(1) {
        let Some(classes) = find_multipartite(&graph, t_usize, Some(&allowed), opts.budget) else {
            break;
        };
        for &v in classes.iter().flatten() {
            allowed[v] = false;
        }
        let fams: Vec<Family> = classes.iter().map(|c| family.subfamily(c)).collect();
        let cc = ColorClasses::new(fams)?;
        let weak = weak_colorful_helly(&cc)?;

        let mut union: Vec<usize> = family.positions_of(&weak.selection.chosen)?;
        union.extend(family.positions_of(weak.pruned.ids())?);
        union.sort_unstable();
        union.dedup();
        collect_subsets(&union, kk, &mut tuples);

        copies.push(MultipartiteCopy {
            classes: classes
                .iter()
                .map(|c| c.iter().map(|&v| family.id(v).clone()).collect())
                .collect(),
            selection: weak.selection.chosen.clone(),
            pivot_class: weak.selection.pivot_class,
            pruned: weak.pruned.ids().to_vec(),
        });
    }
    if tuples.is_empty() {
        return Ok(None);
    }

    let certified = tuples.len() as u64;
    let total = binomial(n as u128, kk as u128).ok_or(HellyError::Overflow("binomial"))?;
    let alpha_certified =
        Rational::from_counts(u128::from(certified), total).ok_or(HellyError::Overflow("alpha"))?;
    let Some(fractional) = fractional_k(family, p, alpha_certified, opts.mode)? else {
        return Ok(None);
    };
    Ok(Some(KPlusOneWitness {
        alpha,
        t,
        t_formula: formula.to_string(),
        copies,
        certified_tuples: certified,
        alpha_certified,
        fractional,
    }))
}

/// Adds every `size`-subset of `pool` (sorted) to `out`.
fn collect_subsets(pool: &[usize], size: usize, out: &mut BTreeSet<Vec<usize>>) {
    fn rec(
        pool: &[usize],
        size: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        if cur.len() == size {
            out.insert(cur.clone());
            return;
        }
        for i in start..pool.len() {
            if pool.len() - i < size - cur.len() {
                break;
            }
            cur.push(pool[i]);
            rec(pool, size, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(pool, size, 0, &mut Vec::with_capacity(size), out);
}

/// The `(2k+1)`-halfspace system used in tests and generators: `+e_j`, `-e_j` and `sum x_j`.
pub fn odd_system(dim: usize) -> Result<Arc<crate::hsystem::HSystem>> {
    let mut normals = Vec::with_capacity(2 * dim + 1);
    for j in 0..dim {
        let mut plus = vec![Rational::ZERO; dim];
        plus[j] = Rational::ONE;
        let minus = plus.iter().map(|&x| -x).collect();
        normals.push(plus);
        normals.push(minus);
    }
    normals.push(vec![Rational::ONE; dim]);
    Ok(Arc::new(crate::hsystem::HSystem::new(dim, normals)?))
}
