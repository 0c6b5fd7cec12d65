//! Exact forms of the constants used by the fractional pipelines.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{HellyError, Result};
use crate::rational::{big_pow, Rational};
use crate::selection::es_bound;

pub(crate) fn check_alpha(alpha: Rational) -> Result<()> {
    if !alpha.is_positive() || alpha > Rational::ONE {
        return Err(HellyError::InvalidParameter(format!(
            "alpha must be in (0,1], got {alpha}"
        )));
    }
    Ok(())
}

/// Smallest `m` with `(m / n)^(k+1) >= 1 - alpha`, at least 1 and at most `n`.
///
/// This is `ceil(gamma * n)` for `gamma = (1 - alpha)^(1/(k+1))`, computed
/// without approximating the root.
pub fn prefix_size(n: usize, k: usize, alpha: Rational) -> Result<usize> {
    check_alpha(alpha)?;
    let slack = Rational::ONE - alpha;
    let exp = u32::try_from(k + 1).map_err(|_| HellyError::Overflow("prefix exponent"))?;
    let p = BigUint::try_from(slack.numer()).expect("nonnegative");
    let q = BigUint::try_from(slack.denom()).expect("positive");
    let rhs = &p * BigUint::from(n).pow(exp);
    let (mut lo, mut hi) = (0usize, n);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if BigUint::from(mid).pow(exp) * &q >= rhs {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo.max(1).min(n.max(1)))
}

/// Whether a subfamily of `size` out of `n` meets `size >= ceil((1 - k (1 - alpha)^(1/(k+1))) n)`.
pub fn meets_fractional_bound(n: usize, k: usize, alpha: Rational, size: usize) -> bool {
    if size >= n {
        return true;
    }
    if k == 0 {
        return false;
    }
    // size >= n - k*gamma*n  <=>  gamma >= (n - size) / (k n)  <=>  1 - alpha >= that^(k+1)
    let ratio = BigRational::new(BigInt::from(n - size), BigInt::from(k) * BigInt::from(n));
    let exp = (k + 1) as u32;
    (Rational::ONE - alpha).to_big() >= big_pow(&ratio, exp)
}

/// `C(n, r)` as a big integer.
pub fn big_binomial(n: &BigUint, r: u64) -> BigUint {
    let r_big = BigUint::from(r);
    if &r_big > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * (n - BigUint::from(i)) / BigUint::from(i + 1);
    }
    acc
}

/// `c_k = (N - k)! k! / N! = 1 / C(N, k)` with `N = N(k, k)` the iterated Erdős–Szekeres bound.
pub fn c_k(k: usize) -> BigRational {
    let n = es_bound(k, k as u64);
    let c = big_binomial(&n, k as u64);
    BigRational::new(BigInt::one(), BigInt::from(c))
}

/// `2^(k(2k+1)+1) (2k+1)`, the multipartite class size for the `(k+1)`-tuple pipeline.
pub fn multipartite_t(k: usize) -> BigUint {
    let exp = k * (2 * k + 1) + 1;
    (BigUint::one() << exp) * BigUint::from(2 * k + 1)
}

/// `p/q` rendering of a big rational, matching [`Rational`]'s display form.
pub fn big_to_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}
