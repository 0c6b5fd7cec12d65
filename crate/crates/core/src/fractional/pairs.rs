use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{HellyError, Result};
use crate::hsystem::{Family, HSet};
use crate::properties::MonotoneProperty;
use crate::rational::Rational;
use crate::selection::{chain_is_monotone, es_bound, Direction};

use super::bounds::{big_to_string, c_k};
use super::enumerate::binomial;
use super::k::{fractional_k, FractionalWitness, SearchMode};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairsWitness {
    pub alpha: Rational,
    /// `alpha + c_k - 1`, the certified `k`-tuple density.
    pub alpha_prime: Rational,
    pub c_k: String,
    /// `N(k, k)`.
    pub chain_bound: String,
    /// Consistently ordered `k`-subsets with all pairs `P`-intersecting.
    pub certified_tuples: u64,
    pub fractional: FractionalWitness,
}

/// Fractional Helly from pair density, for `alpha > 1 - c_k`.
///
/// A consistently ordered `k`-subset whose pairs all satisfy `P` has the
/// intersection of its two extremes, so it satisfies `P`. Counting those
/// certifies a `k`-tuple density of `alpha' = alpha + c_k - 1`, which is
/// handed to [`fractional_k`].
pub fn fractional_pairs(
    family: &Family,
    p: &MonotoneProperty,
    alpha: Rational,
    mode: SearchMode,
) -> Result<Option<PairsWitness>> {
    let k = family.system().k();
    if k < 2 {
        return Err(HellyError::InvalidParameter(
            "pair version needs at least two halfspaces".into(),
        ));
    }
    let c = c_k(k);
    let one = BigRational::from_integer(BigInt::from(1));
    let lower = &one - &c;
    let a = alpha.to_big();
    if a <= lower || a > one {
        return Err(HellyError::AlphaOutOfRange {
            alpha: alpha.to_string(),
            lower: big_to_string(&lower),
            c_k: big_to_string(&c),
        });
    }
    let alpha_prime =
        Rational::try_from_big(&(&a - &lower)).ok_or(HellyError::Overflow("alpha prime"))?;
    let n = family.len();
    if n < k {
        return Err(HellyError::InvalidParameter(format!(
            "family of {n} members has no {k}-subsets"
        )));
    }

    let certified = count_chain_tuples(family, p, k)?;
    let total = binomial(n as u128, k as u128).ok_or(HellyError::Overflow("binomial"))?;
    // certified >= alpha' * total
    let lhs = BigInt::from(certified) * BigInt::from(alpha_prime.denom());
    let rhs = BigInt::from(total) * BigInt::from(alpha_prime.numer());
    if lhs < rhs {
        return Err(HellyError::Uncertified {
            found: certified.to_string(),
            required: format!("{alpha_prime} of {total}"),
        });
    }
    let Some(fractional) = fractional_k(family, p, alpha_prime, mode)? else {
        return Ok(None);
    };
    Ok(Some(PairsWitness {
        alpha,
        alpha_prime,
        c_k: big_to_string(&c),
        chain_bound: es_bound(k, k as u64).to_string(),
        certified_tuples: u64::try_from(certified)
            .map_err(|_| HellyError::Overflow("certified tuples"))?,
        fractional,
    }))
}

/// Number of `k`-subsets that are consistently ordered and pairwise `P`-intersecting.
pub fn count_chain_tuples(family: &Family, p: &MonotoneProperty, k: usize) -> Result<u128> {
    let n = family.len();
    let prop = p.prepare(family.system())?;
    let mut adj = vec![vec![false; n]; n];
    let mut buf = vec![Rational::ZERO; family.system().k()];
    for a in 0..n {
        for b in a + 1..n {
            buf.copy_from_slice(family.offsets(a));
            crate::hsystem::min_into(&mut buf, family.offsets(b));
            let ok = prop.holds(&buf);
            adj[a][b] = ok;
            adj[b][a] = ok;
        }
    }
    let rank = {
        let order = family.sorted_by(0);
        let mut rank = vec![0; n];
        for (i, &p) in order.iter().enumerate() {
            rank[p] = i;
        }
        rank
    };
    let mut count = 0u128;
    let mut clique = Vec::with_capacity(k);
    cliques(&adj, k, 0, &mut clique, &mut |c| {
        if consistent(family, c, &rank) {
            count += 1;
        }
    });
    Ok(count)
}

fn cliques(
    adj: &[Vec<bool>],
    k: usize,
    start: usize,
    cur: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for v in start..adj.len() {
        if cur.iter().all(|&u| adj[u][v]) {
            cur.push(v);
            cliques(adj, k, v + 1, cur, f);
            cur.pop();
        }
    }
}

fn consistent(family: &Family, positions: &[usize], rank: &[usize]) -> bool {
    let mut sorted = positions.to_vec();
    sorted.sort_by_key(|&p| rank[p]);
    let chain: Vec<HSet> = sorted.iter().map(|&p| family.get(p).clone()).collect();
    let k = family.system().k();
    let profile: Vec<Direction> = (0..k)
        .map(|i| {
            let asc = chain.windows(2).all(|w| w[0].offset(i) <= w[1].offset(i));
            if asc {
                Direction::Ascending
            } else {
                Direction::Descending
            }
        })
        .collect();
    chain_is_monotone(&chain, &profile)
}
