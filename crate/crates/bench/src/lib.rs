//! Fixtures shared by the criterion benches.

use helly_core::constructions::{gen_dense, gen_random};
use helly_core::fractional::odd_system;
use helly_core::{
    canonical_box_system, ColorClasses, Family, MemberId, MonotoneProperty, Rational,
};

pub fn random_boxes(dim: usize, n: usize, seed: u64) -> Family {
    gen_random(&canonical_box_system(dim).unwrap(), n, 20, seed).unwrap()
}

/// `classes` classes of `size` random boxes each.
pub fn box_classes(dim: usize, classes: usize, size: usize, seed: u64) -> ColorClasses {
    let f = random_boxes(dim, classes * size, seed);
    split(&f, classes, size)
}

/// `k + 1` classes over the `2k + 1` halfspace system.
pub fn odd_classes(k: usize, size: usize, seed: u64) -> ColorClasses {
    let sys = odd_system(k).unwrap();
    let f = gen_random(&sys, (k + 1) * size, 10, seed).unwrap();
    split(&f, k + 1, size)
}

fn split(f: &Family, classes: usize, size: usize) -> ColorClasses {
    let ids: Vec<Vec<MemberId>> = (0..classes)
        .map(|c| f.ids()[c * size..(c + 1) * size].to_vec())
        .collect();
    ColorClasses::from_family(f, &ids).unwrap()
}

pub fn dense_boxes(dim: usize, n: usize, alpha: Rational, r: usize, seed: u64) -> Family {
    gen_dense(
        &canonical_box_system(dim).unwrap(),
        n,
        alpha,
        r,
        &MonotoneProperty::NonEmpty,
        seed,
    )
    .unwrap()
}

pub fn dense_odd(k: usize, n: usize, alpha: Rational, seed: u64) -> Family {
    gen_dense(
        &odd_system(k).unwrap(),
        n,
        alpha,
        k + 1,
        &MonotoneProperty::NonEmpty,
        seed,
    )
    .unwrap()
}
