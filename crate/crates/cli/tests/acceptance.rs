//! Acceptance criteria 1-12. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::error::Error;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use helly_cli::Loaded;
use helly_core::constructions::{gen_dense, gen_random, gen_tight_colorful};
use helly_core::fractional::{big_to_string, c_k, multipartite_t, odd_system, PierceOutcome};
use helly_core::oracle::{
    brute_colorful, brute_density, brute_min_witness, brute_pierce, verify_chain, verify_colorful,
    verify_fractional, verify_hypothesis_failure, verify_kplus1, verify_pairs, verify_piercing,
    verify_weak, Combinations, OracleLimits,
};
use helly_core::selection::{chain_intersection, es_bound, ChainWitness, Direction};
use helly_core::{
    canonical_box_system, colorful_select, density, fractional_k, fractional_kplus1,
    fractional_pairs, hset_volume, intersect, pq_pierce, strong_helly_witness, weak_colorful_helly,
    AxisBox, ColorClasses, Family, HSet, HSystem, HellyError, KPlusOneOptions, MemberId,
    MonotoneProperty, Rational, SearchMode,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<String, Box<dyn Error>>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+).into());
        }
    };
}

// Pinned tolerances.
const C1_SEEDS: u64 = 1000;
const C1_MAX_FAMILY: usize = 40;
const C1_BRUTE_MAX: usize = 12;
const C1_BUDGET: Duration = Duration::from_secs(60);
const C2_INSTANCES: u64 = 500;
const C2_MAX_CLASS: usize = 6;
const C4_N: usize = 200;
const C4_ALPHA_MIN: (i128, i128) = (95, 100);
const C4_INSTANCES: u64 = 3;
const C4_BUDGET: Duration = Duration::from_secs(120);
const C5_CHAINS: usize = 10_000;
const C5_MAX_LEN: usize = 6;
const C5_MAX_K: usize = 8;
const C6_K1_SEEDS: u64 = 200;
const C6_K2_SEEDS: u64 = 20;
const C6_BUDGET: Duration = Duration::from_secs(300);
const C7_N: usize = 60;
const C7_T: u64 = 16;
const C8_N: usize = 30;
const C8_ALPHA_MIN: (i128, i128) = (99, 100);
const C9_INSTANCES: usize = 100;
const C9_MAX_FAMILY: usize = 12;
const C9_MAX_P: usize = 6;
const C10_PAIRS: usize = 10_000;
const C11_MUTATIONS: usize = 50;

fn q(n: i128, d: i128) -> Rational {
    Rational::new(n, d).unwrap()
}

fn r(n: i64) -> Rational {
    Rational::from(n)
}

fn ids_of(f: &Family, ids: &[MemberId]) -> Result<Family, Box<dyn Error>> {
    Ok(f.subfamily_by_ids(ids)?)
}

/// `size >= n (1 - k (1 - alpha)^(1/(k+1)))`, decided in integers.
fn meets_bound(n: usize, k: usize, alpha: Rational, size: usize) -> bool {
    if size >= n {
        return true;
    }
    let e = (k + 1) as u32;
    let lhs = ((n - size) as i128).pow(e) * alpha.denom();
    let rhs = (alpha.denom() - alpha.numer()) * ((k * n) as i128).pow(e);
    lhs <= rhs
}

fn float_bound(n: usize, k: usize, alpha: Rational) -> f64 {
    ((1.0 - k as f64 * (1.0 - alpha.to_f64()).powf(1.0 / (k + 1) as f64)) * n as f64).ceil()
}

/// Distinct nonzero normals with entries in -2..=2; `k` is capped at the `5^dim - 1` available.
fn random_normals(rng: &mut ChaCha8Rng, dim: usize, k: usize) -> Vec<Vec<Rational>> {
    let k = k.min(5usize.pow(dim as u32) - 1);
    let mut out: Vec<Vec<Rational>> = Vec::new();
    while out.len() < k {
        let v: Vec<Rational> = (0..dim).map(|_| r(rng.gen_range(-2..=2))).collect();
        if v.iter().all(|x| x.is_zero()) || out.contains(&v) {
            continue;
        }
        out.push(v);
    }
    out
}

fn general_system(rng: &mut ChaCha8Rng, dim: usize, k: usize) -> Arc<HSystem> {
    Arc::new(HSystem::new(dim, random_normals(rng, dim, k)).unwrap())
}

fn c1() -> Check {
    let start = Instant::now();
    let limits = OracleLimits::default();
    let mut brute_checked = 0;
    for seed in 0..C1_SEEDS {
        let dim = 1 + (seed % 4) as usize;
        let n = 1 + (seed as usize * 7) % C1_MAX_FAMILY;
        let f = gen_random(&canonical_box_system(dim)?, n, 10, seed)?;
        let w = strong_helly_witness(&f)?;
        ensure!(w.len() <= 2 * dim, "seed {seed}: {} ids > 2d", w.len());
        let sub = ids_of(&f, &w)?;
        ensure!(
            sub.intersection()?.offsets() == f.intersection()?.offsets(),
            "seed {seed}: witness intersection differs"
        );
        if n <= C1_BRUTE_MAX {
            let b = brute_min_witness(&f, &limits)?;
            ensure!(
                b.len() <= w.len() && b.len() <= 2 * dim,
                "seed {seed}: oracle size {}",
                b.len()
            );
            brute_checked += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < C1_BUDGET, "took {elapsed:?}");
    Ok(format!(
        "{C1_SEEDS} families, {brute_checked} oracle-checked, exact equality, {elapsed:.1?}"
    ))
}

fn c2_instance(seed: u64) -> (ColorClasses, Vec<Vec<Rational>>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (system, boxes) = if seed % 2 == 0 {
        (
            canonical_box_system(1 + (seed / 2 % 4) as usize).unwrap(),
            true,
        )
    } else {
        let dim = rng.gen_range(1..=3);
        let k = rng.gen_range(2..=5);
        (general_system(&mut rng, dim, k), false)
    };
    let k = system.k();
    let dim = system.dim();
    let mut sizes: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=C2_MAX_CLASS)).collect();
    while sizes.iter().map(|&s| s as u128).product::<u128>() > 1_000_000 {
        let i = (0..k).max_by_key(|&i| sizes[i]).unwrap();
        sizes[i] -= 1;
    }
    let mut classes = Vec::new();
    for (c, &size) in sizes.iter().enumerate() {
        let mut entries = Vec::new();
        for j in 0..size {
            let near = rng.gen_bool(0.8);
            let set = if boxes {
                let iv: Vec<(i64, i64)> = (0..dim)
                    .map(|_| {
                        if near {
                            (rng.gen_range(-5..=0), rng.gen_range(0..=5))
                        } else {
                            let lo = rng.gen_range(-10..=10);
                            (lo, lo + rng.gen_range(0..=4))
                        }
                    })
                    .collect();
                HSet::from_box(&system, &AxisBox::from_intervals(&iv).unwrap()).unwrap()
            } else {
                let offsets = (0..k)
                    .map(|_| {
                        if near {
                            r(rng.gen_range(0..=5))
                        } else {
                            r(rng.gen_range(-8..=2))
                        }
                    })
                    .collect();
                HSet::new(Arc::clone(&system), offsets).unwrap()
            };
            entries.push((MemberId::from(format!("c{c}_{j}").as_str()), set));
        }
        classes.push(Family::new(Arc::clone(&system), entries).unwrap());
    }
    let mut points: Vec<Vec<Rational>> = (0..3)
        .map(|_| (0..dim).map(|_| r(rng.gen_range(-3..=3))).collect())
        .collect();
    if rng.gen_bool(0.5) {
        points.push(vec![Rational::ZERO; dim]);
    }
    (ColorClasses::new(classes).unwrap(), points)
}

fn c2() -> Check {
    let limits = OracleLimits::default();
    let mut hypotheses = 0;
    let mut scans = 0;
    for seed in 0..C2_INSTANCES {
        let (cc, points) = c2_instance(seed);
        let w = colorful_select(&cc)?;
        ensure!(
            verify_colorful(&cc, &w)?,
            "seed {seed}: certificate rejected"
        );
        for p in [
            MonotoneProperty::NonEmpty,
            MonotoneProperty::contains_at_least(1, points.clone()),
        ] {
            let report = brute_colorful(&cc, &p, &limits)?;
            scans += 1;
            ensure!(
                report.consistent(),
                "seed {seed}: hypothesis without conclusion for {p:?}"
            );
            if report.hypothesis {
                hypotheses += 1;
                let pivot = cc.class(w.pivot_class).intersection()?;
                ensure!(
                    p.eval(&pivot)?,
                    "seed {seed}: pivot class not P-intersecting"
                );
            }
        }
    }
    Ok(format!("{C2_INSTANCES} instances, {scans} exhaustive scans, {hypotheses} with hypothesis true, 0 violations"))
}

fn c3() -> Check {
    let half = q(1, 2);
    let mut subsets = 0;
    for dim in 1..=4 {
        let f = gen_tight_colorful(dim, half, None)?;
        ensure!(f.len() == 2 * dim, "d={dim}: {} sets", f.len());
        let full = hset_volume(&f.intersection()?)?;
        ensure!(full == half, "d={dim}: full volume {full}");
        for combo in Combinations::new(2 * dim, 2 * dim - 1) {
            let v = hset_volume(&f.intersection_of(&combo)?)?;
            ensure!(v >= Rational::ONE, "d={dim}: subset {combo:?} volume {v}");
            subsets += 1;
        }
    }
    Ok(format!(
        "d=1..4, full volume 1/2 exactly, {subsets} (2d-1)-subfamilies with volume >= 1"
    ))
}

fn c4() -> Check {
    let sys = canonical_box_system(2)?;
    let p = MonotoneProperty::NonEmpty;
    let min_alpha = q(C4_ALPHA_MIN.0, C4_ALPHA_MIN.1);
    let mut lines = Vec::new();
    for seed in 0..C4_INSTANCES {
        let start = Instant::now();
        let f = gen_dense(&sys, C4_N, min_alpha, 4, &p, seed)?;
        let alpha = density(&f, 4, &p)?;
        ensure!(alpha >= min_alpha, "seed {seed}: measured alpha {alpha}");
        let w = fractional_k(&f, &p, alpha, SearchMode::Exhaustive)?
            .ok_or("fractional_k found nothing")?;
        ensure!(
            verify_fractional(&f, &p, &w)?,
            "seed {seed}: certificate rejected"
        );
        let sub = ids_of(&f, &w.subfamily)?;
        ensure!(
            p.eval(&sub.intersection()?)?,
            "seed {seed}: subfamily not P-intersecting"
        );
        ensure!(
            meets_bound(C4_N, 4, alpha, sub.len()),
            "seed {seed}: size {} below bound",
            sub.len()
        );
        let elapsed = start.elapsed();
        ensure!(elapsed < C4_BUDGET, "seed {seed}: took {elapsed:?}");
        lines.push(format!(
            "{}>={} ({elapsed:.1?})",
            sub.len(),
            float_bound(C4_N, 4, alpha)
        ));
    }
    // the bound is vacuous below alpha = 1 - 4^-5; at alpha = 1 it is |F| - k
    let f = gen_dense(&sys, C4_N, Rational::ONE, 4, &p, 0)?;
    let w = fractional_k(&f, &p, Rational::ONE, SearchMode::Exhaustive)?
        .ok_or("alpha = 1 found nothing")?;
    ensure!(
        verify_fractional(&f, &p, &w)?,
        "alpha = 1 certificate rejected"
    );
    ensure!(
        w.subfamily.len() >= C4_N - 4,
        "alpha = 1: size {}",
        w.subfamily.len()
    );
    lines.push(format!("{}>={} at alpha=1", w.subfamily.len(), C4_N - 4));
    Ok(format!(
        "|F|=200, alpha>=0.95 measured exactly, sizes {}",
        lines.join(", ")
    ))
}

fn c5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for t in 0..C5_CHAINS {
        let len = rng.gen_range(2..=C5_MAX_LEN);
        let system = if rng.gen_bool(0.5) {
            canonical_box_system(rng.gen_range(1..=C5_MAX_K / 2))?
        } else {
            let dim = rng.gen_range(1..=3);
            let k = rng.gen_range(1..=C5_MAX_K);
            general_system(&mut rng, dim, k)
        };
        let k = system.k();
        let profile: Vec<Direction> = (0..k)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    Direction::Ascending
                } else {
                    Direction::Descending
                }
            })
            .collect();
        let mut columns: Vec<Vec<i64>> = Vec::with_capacity(k);
        for dir in &profile {
            let mut col: Vec<i64> = (0..len).map(|_| rng.gen_range(-20..=20)).collect();
            col.sort_unstable();
            if *dir == Direction::Descending {
                col.reverse();
            }
            columns.push(col);
        }
        let sets: Vec<HSet> = (0..len)
            .map(|j| {
                HSet::new(
                    Arc::clone(&system),
                    columns.iter().map(|c| r(c[j])).collect(),
                )
                .unwrap()
            })
            .collect();
        for (i, col) in columns.iter().enumerate() {
            let min = *col.iter().min().unwrap();
            ensure!(
                min == col[0].min(col[len - 1]),
                "chain {t}: coordinate {i} minimum inside"
            );
        }
        let all = intersect(&sets)?;
        let ends = intersect([&sets[0], &sets[len - 1]])?;
        ensure!(
            all.offsets() == ends.offsets(),
            "chain {t}: intersection differs from ends"
        );
        let f = Family::from_sets(Arc::clone(&system), "c", sets.clone())?;
        let w = ChainWitness {
            ids: f.ids().to_vec(),
            direction_profile: profile,
        };
        ensure!(
            chain_intersection(&sets, &w)?.offsets() == all.offsets(),
            "chain {t}: library disagrees"
        );
        ensure!(verify_chain(&f, &w)?, "chain {t}: certificate rejected");
    }
    Ok(format!(
        "{C5_CHAINS} chains, length <= {C5_MAX_LEN}, k <= {C5_MAX_K}, exact"
    ))
}

fn weak_round(
    sys: &Arc<HSystem>,
    k: usize,
    class_size: usize,
    seed: u64,
) -> Result<(), Box<dyn Error>> {
    let classes = k + 1;
    let f = gen_random(sys, classes * class_size, 10, seed)?;
    let ids = f.ids();
    let split: Vec<Vec<MemberId>> = (0..classes)
        .map(|c| ids[c * class_size..(c + 1) * class_size].to_vec())
        .collect();
    let cc = ColorClasses::from_family(&f, &split)?;
    let w = weak_colorful_helly(&cc)?;
    let pruned = w.pruned.ids().to_vec();
    ensure!(
        verify_weak(&cc, &w.selection, &pruned)?,
        "k={k} seed {seed}: certificate rejected"
    );
    let factor = 1u128 << (k * (2 * k + 1) + 1);
    let pivot = cc.class(w.selection.pivot_class).len() as u128;
    ensure!(
        pruned.len() as u128 * factor >= pivot,
        "k={k} seed {seed}: |B'| = {}",
        pruned.len()
    );
    Ok(())
}

fn c6() -> Check {
    let start = Instant::now();
    let s1 = odd_system(1)?;
    for seed in 0..C6_K1_SEEDS {
        weak_round(&s1, 1, 16, seed)?;
    }
    let s2 = odd_system(2)?;
    for seed in 0..C6_K2_SEEDS {
        weak_round(&s2, 2, 2048, seed)?;
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < C6_BUDGET, "took {elapsed:?}");
    Ok(format!("k=1: {C6_K1_SEEDS} seeds x 2 classes of 16; k=2: {C6_K2_SEEDS} seeds x 3 classes of 2048; {elapsed:.1?}"))
}

fn c7() -> Check {
    let sys = odd_system(1)?;
    let p = MonotoneProperty::NonEmpty;
    let limits = OracleLimits::default();
    let k = 1usize;
    let t1 = (1u128 << (k * (2 * k + 1) + 1)) * (2 * k as u128 + 1);
    ensure!(
        t1 == 48 && multipartite_t(1).to_string() == "48",
        "t(1) = {}",
        multipartite_t(1)
    );
    let mut sizes = Vec::new();
    for seed in 0..5 {
        let f = gen_dense(&sys, C7_N, q(4, 5), 2, &p, seed)?;
        let opts = KPlusOneOptions {
            t_override: Some(C7_T),
            ..KPlusOneOptions::default()
        };
        let w = fractional_kplus1(&f, &p, q(4, 5), opts)?.ok_or("pipeline found nothing")?;
        ensure!(
            w.t == C7_T && w.t_formula == "48",
            "seed {seed}: t {} formula {}",
            w.t,
            w.t_formula
        );
        ensure!(
            verify_kplus1(&f, &p, &w, &limits)?,
            "seed {seed}: certificate rejected"
        );
        let sub = ids_of(&f, &w.fractional.subfamily)?;
        ensure!(
            p.eval(&sub.intersection()?)?,
            "seed {seed}: subfamily not P-intersecting"
        );
        sizes.push(sub.len());
    }
    let f = gen_dense(&sys, 96, Rational::ONE, 2, &p, 0)?;
    let w = fractional_kplus1(&f, &p, Rational::ONE, KPlusOneOptions::default())?
        .ok_or("default t found nothing")?;
    ensure!(w.t as u128 == t1, "default t = {}", w.t);
    ensure!(
        verify_kplus1(&f, &p, &w, &limits)?,
        "default-t certificate rejected"
    );
    Ok(format!(
        "|F|=60, t_override=16, subfamily sizes {sizes:?}; default t = 48 = t(1)"
    ))
}

fn c8() -> Check {
    let sys = canonical_box_system(1)?;
    let p = MonotoneProperty::NonEmpty;
    let min_alpha = q(C8_ALPHA_MIN.0, C8_ALPHA_MIN.1);
    // N(2,2) = (2-1)^2 + 1 = 2, C(2,2) = 1
    ensure!(
        es_bound(2, 2).to_string() == "2",
        "N(2,2) = {}",
        es_bound(2, 2)
    );
    let c2 = c_k(2);
    ensure!(big_to_string(&c2) == "1/1", "c_2 = {}", big_to_string(&c2));
    let mut sizes = Vec::new();
    for seed in 0..5 {
        let f = gen_dense(&sys, C8_N, min_alpha, 2, &p, seed)?;
        let alpha = density(&f, 2, &p)?;
        ensure!(alpha >= min_alpha, "seed {seed}: alpha {alpha}");
        let w = fractional_pairs(&f, &p, alpha, SearchMode::Exhaustive)?
            .ok_or("pairs found nothing")?;
        let alpha_prime = alpha + Rational::ONE - Rational::ONE;
        ensure!(
            w.alpha_prime == alpha_prime,
            "seed {seed}: alpha' {}",
            w.alpha_prime
        );
        ensure!(
            verify_pairs(&f, &p, &w)?,
            "seed {seed}: certificate rejected"
        );
        let direct = fractional_k(&f, &p, alpha_prime, SearchMode::Exhaustive)?
            .ok_or("fractional_k found nothing")?;
        ensure!(
            direct == w.fractional,
            "seed {seed}: differs from fractional_k at alpha'"
        );
        let sub = ids_of(&f, &w.fractional.subfamily)?;
        ensure!(
            meets_bound(C8_N, 2, alpha_prime, sub.len()),
            "seed {seed}: size {}",
            sub.len()
        );
        ensure!(
            p.eval(&sub.intersection()?)?,
            "seed {seed}: not P-intersecting"
        );
        sizes.push(sub.len());
    }
    let f = gen_dense(&sys, C8_N, min_alpha, 2, &p, 0)?;
    for bad in [Rational::ZERO, q(-1, 2)] {
        let e = fractional_pairs(&f, &p, bad, SearchMode::Exhaustive);
        ensure!(
            matches!(e, Err(HellyError::AlphaOutOfRange { .. })),
            "alpha {bad} accepted: {e:?}"
        );
    }
    let f3 = gen_random(&odd_system(1)?, 8, 5, 1)?;
    let e = fractional_pairs(&f3, &p, q(679, 680), SearchMode::Exhaustive);
    ensure!(
        matches!(e, Err(HellyError::AlphaOutOfRange { .. })),
        "k=3 alpha = 1 - c_3 accepted"
    );
    Ok(format!(
        "|F|=30, alpha>=0.99, c_2=1, sizes {sizes:?}; alpha <= 1-c_k rejected"
    ))
}

fn hypothesis_holds(
    f: &Family,
    prop: &MonotoneProperty,
    p: usize,
    q: usize,
) -> Result<bool, Box<dyn Error>> {
    for subset in Combinations::new(f.len(), p) {
        let mut ok = false;
        for inner in Combinations::new(p, q) {
            let pos: Vec<usize> = inner.iter().map(|&i| subset[i]).collect();
            if prop.eval(&f.intersection_of(&pos)?)? {
                ok = true;
                break;
            }
        }
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

fn clustered(rng: &mut ChaCha8Rng, dim: usize, n: usize) -> Family {
    let clusters = rng.gen_range(1..=2);
    let centers: Vec<Vec<i64>> = (0..clusters)
        .map(|_| (0..dim).map(|_| rng.gen_range(-12..=12)).collect())
        .collect();
    let boxes: Vec<AxisBox> = (0..n)
        .map(|_| {
            let c = &centers[rng.gen_range(0..clusters)];
            let iv: Vec<(i64, i64)> = if rng.gen_bool(0.9) {
                c.iter()
                    .map(|&x| (x - rng.gen_range(0..=3), x + rng.gen_range(0..=3)))
                    .collect()
            } else {
                c.iter().map(|&x| (x + 4, x + 5)).collect()
            };
            AxisBox::from_intervals(&iv).unwrap()
        })
        .collect();
    Family::from_boxes(&boxes).unwrap()
}

fn c9() -> Check {
    let prop = MonotoneProperty::NonEmpty;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut pierced = 0;
    let mut failed = 0;
    let mut tried = 0;
    while pierced < C9_INSTANCES {
        tried += 1;
        ensure!(
            tried <= 5000,
            "only {pierced} instances satisfied the hypothesis"
        );
        let dim = rng.gen_range(1..=2);
        let n = rng.gen_range(6..=C9_MAX_FAMILY);
        let qq = 2 * dim + 1;
        let p = rng.gen_range(qq..=C9_MAX_P);
        let f = clustered(&mut rng, dim, n);
        let holds = hypothesis_holds(&f, &prop, p, qq)?;
        match pq_pierce(&f, &prop, p, qq)? {
            PierceOutcome::Pierced(pf) => {
                ensure!(holds, "pierced although the oracle finds a violation");
                ensure!(verify_piercing(&f, &prop, &pf)?, "piercing rejected");
                let limits = OracleLimits {
                    max_pierce_bound: pf.greedy_size.max(4),
                    ..OracleLimits::default()
                };
                let best = brute_pierce(&f, &prop, pf.greedy_size, &limits)?
                    .ok_or("oracle found no cover")?;
                ensure!(
                    best.len() <= pf.greedy_size && best.len() <= pf.pins.len(),
                    "oracle cover {}",
                    best.len()
                );
                pierced += 1;
            }
            PierceOutcome::HypothesisFailed(subset) => {
                ensure!(!holds, "violation reported although the oracle finds none");
                ensure!(
                    verify_hypothesis_failure(&f, &prop, &subset, p, qq)?,
                    "violation rejected"
                );
                failed += 1;
            }
        }
    }
    for dim in 1..=2usize {
        let qq = 2 * dim + 1;
        let boxes: Vec<AxisBox> = (0..6i64)
            .map(|i| AxisBox::from_intervals(&vec![(3 * i, 3 * i + 1); dim]).unwrap())
            .collect();
        let f = Family::from_boxes(&boxes)?;
        let PierceOutcome::HypothesisFailed(subset) = pq_pierce(&f, &prop, qq, qq)? else {
            return Err(format!("d={dim}: disjoint family pierced").into());
        };
        ensure!(subset.len() == qq, "d={dim}: subset size {}", subset.len());
        ensure!(
            verify_hypothesis_failure(&f, &prop, &subset, qq, qq)?,
            "d={dim}: violation rejected"
        );
    }
    Ok(format!("{pierced} pierced instances verified against the oracle ({failed} random violations also checked); constructed violations caught"))
}

fn c10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let box2 = canonical_box_system(2)?;
    let gen2 = general_system(&mut rng, 2, 4);
    let gen3 = general_system(&mut rng, 3, 5);
    let pts2: Vec<Vec<Rational>> = (0..5)
        .map(|_| vec![r(rng.gen_range(-4..=4)), r(rng.gen_range(-4..=4))])
        .collect();
    let pts3: Vec<Vec<Rational>> = (0..5)
        .map(|_| (0..3).map(|_| r(rng.gen_range(-4..=4))).collect())
        .collect();
    let variants: Vec<(&str, Arc<HSystem>, MonotoneProperty)> = vec![
        (
            "non_empty/boxes",
            Arc::clone(&box2),
            MonotoneProperty::NonEmpty,
        ),
        (
            "non_empty/k=4,d=2",
            Arc::clone(&gen2),
            MonotoneProperty::NonEmpty,
        ),
        (
            "non_empty/k=5,d=3",
            Arc::clone(&gen3),
            MonotoneProperty::NonEmpty,
        ),
        (
            "volume_at_least",
            Arc::clone(&box2),
            MonotoneProperty::volume_at_least(r(4)),
        ),
        (
            "contains_at_least/boxes",
            Arc::clone(&box2),
            MonotoneProperty::contains_at_least(2, pts2.clone()),
        ),
        (
            "contains_at_least/k=5,d=3",
            Arc::clone(&gen3),
            MonotoneProperty::contains_at_least(1, pts3),
        ),
        (
            "all_of",
            Arc::clone(&box2),
            MonotoneProperty::AllOf {
                of: vec![
                    MonotoneProperty::NonEmpty,
                    MonotoneProperty::contains_at_least(1, pts2.clone()),
                ],
            },
        ),
        (
            "any_of",
            Arc::clone(&box2),
            MonotoneProperty::AnyOf {
                of: vec![
                    MonotoneProperty::volume_at_least(r(9)),
                    MonotoneProperty::contains_at_least(3, pts2),
                ],
            },
        ),
    ];
    let mut summary = Vec::new();
    for (name, sys, prop) in variants {
        let mut held = 0;
        for t in 0..C10_PAIRS {
            let b: Vec<Rational> = (0..sys.k()).map(|_| r(rng.gen_range(-6..=6))).collect();
            let c: Vec<Rational> = b.iter().map(|&x| x + r(rng.gen_range(0..=3))).collect();
            let bs = HSet::new(Arc::clone(&sys), b)?;
            let cs = HSet::new(Arc::clone(&sys), c)?;
            if prop.eval(&bs)? {
                held += 1;
                ensure!(prop.eval(&cs)?, "{name}: counterexample at pair {t}");
            }
        }
        summary.push(format!("{name} {held}"));
    }
    Ok(format!(
        "{C10_PAIRS} pairs per variant, 0 counterexamples (P(B) true: {})",
        summary.join(", ")
    ))
}

fn helly() -> Command {
    Command::new(env!("CARGO_BIN_EXE_helly"))
}

fn status(cmd: &mut Command) -> i32 {
    let out = cmd.output().expect("spawn helly");
    out.status.code().unwrap_or(-1)
}

fn verify_code(cert: &Path, inst: &Path, soundness_only: bool) -> i32 {
    let mut cmd = helly();
    cmd.args(["verify", "--certificate"])
        .arg(cert)
        .arg("--instance")
        .arg(inst);
    if soundness_only {
        cmd.arg("--soundness-only");
    }
    status(&mut cmd)
}

fn leaves(v: &Value, path: String, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                leaves(
                    x,
                    format!("{path}/{}", k.replace('~', "~0").replace('/', "~1")),
                    out,
                );
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                leaves(x, format!("{path}/{i}"), out);
            }
        }
        _ => out.push(path),
    }
}

/// Changes one leaf to a different value of the same shape where possible.
fn mutate(leaf: &mut Value, j: usize, ids: &[String]) {
    *leaf = match leaf.take() {
        Value::Number(n) => {
            Value::from(n.as_u64().map(|x| x as i64).or(n.as_i64()).unwrap_or(0) + j as i64)
        }
        Value::Bool(b) => Value::Bool(!b),
        Value::String(s) => {
            if let Some(pos) = ids.iter().position(|id| *id == s) {
                Value::from(ids[(pos + j) % ids.len()].clone())
            } else if let Ok(x) = s.parse::<Rational>() {
                Value::from((x + r(j as i64)).to_string())
            } else {
                let swapped = match s.as_str() {
                    "ascending" => "descending",
                    "descending" => "ascending",
                    "ok" => "not_found",
                    _ => "",
                };
                if j == 1 && !swapped.is_empty() {
                    Value::from(swapped)
                } else {
                    Value::from(format!("{s}_{j}"))
                }
            }
        }
        Value::Null => Value::from(j as i64),
        other => other,
    };
}

struct Case {
    algorithm: &'static str,
    gen: Vec<&'static str>,
    run: Vec<&'static str>,
}

fn c11() -> Check {
    let dir = tempfile::TempDir::new()?;
    let odd1 = r#"[["1/1"],["-1/1"],["1/1"]]"#;
    let cases = vec![
        Case {
            algorithm: "strong-helly",
            gen: vec!["random", "--dim", "2", "--n", "20", "--seed", "11"],
            run: vec![],
        },
        Case {
            algorithm: "colorful",
            gen: vec![
                "random",
                "--dim",
                "2",
                "--n",
                "12",
                "--seed",
                "12",
                "--classes",
                "4",
            ],
            run: vec![],
        },
        Case {
            algorithm: "weak-colorful",
            gen: vec![
                "random",
                "--dim",
                "1",
                "--n",
                "32",
                "--seed",
                "13",
                "--classes",
                "2",
                "--normals",
                odd1,
            ],
            run: vec![],
        },
        Case {
            algorithm: "fractional-k",
            gen: vec![
                "dense", "--dim", "2", "--n", "30", "--alpha", "9/10", "--r", "4", "--seed", "14",
            ],
            run: vec!["--alpha", "9/10"],
        },
        Case {
            algorithm: "fractional-k1",
            gen: vec![
                "dense",
                "--dim",
                "1",
                "--n",
                "60",
                "--alpha",
                "4/5",
                "--r",
                "2",
                "--seed",
                "15",
                "--normals",
                odd1,
            ],
            run: vec!["--alpha", "4/5", "--t-override", "16"],
        },
        Case {
            algorithm: "fractional-pairs",
            gen: vec![
                "dense", "--dim", "1", "--n", "30", "--alpha", "99/100", "--r", "2", "--seed", "16",
            ],
            run: vec!["--alpha", "99/100"],
        },
        Case {
            algorithm: "pq-pierce",
            gen: vec![
                "dense", "--dim", "1", "--n", "10", "--alpha", "9/10", "--r", "2", "--seed", "17",
            ],
            run: vec!["--p", "4", "--q", "3"],
        },
        Case {
            algorithm: "chain",
            gen: vec!["random", "--dim", "1", "--n", "16", "--seed", "9"],
            run: vec!["--target", "3"],
        },
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut report = Vec::new();
    for case in &cases {
        let inst: PathBuf = dir.path().join(format!("{}.instance.json", case.algorithm));
        let cert: PathBuf = dir.path().join(format!("{}.cert.json", case.algorithm));
        let code = status(helly().arg("gen").args(&case.gen).arg("--out").arg(&inst));
        ensure!(code == 0, "{}: gen exited {code}", case.algorithm);
        let code = status(
            helly()
                .args(["run", "--algorithm", case.algorithm, "--instance"])
                .arg(&inst)
                .args(&case.run)
                .arg("--out")
                .arg(&cert),
        );
        ensure!(code == 0, "{}: run exited {code}", case.algorithm);
        ensure!(
            verify_code(&cert, &inst, false) == 0,
            "{}: unmutated certificate rejected",
            case.algorithm
        );
        let original: Value = serde_json::from_slice(&std::fs::read(&cert)?)?;
        let ids: Vec<String> = Loaded::read(&inst)?
            .family
            .ids()
            .iter()
            .map(|m| m.as_str().to_string())
            .collect();
        let mut paths = Vec::new();
        for key in ["params", "property", "status", "result", "violating_subset"] {
            if let Some(v) = original.get(key) {
                leaves(v, format!("/{key}"), &mut paths);
            }
        }
        paths.shuffle(&mut rng);
        let mut sound_caught = 0;
        for t in 0..C11_MUTATIONS {
            let path = &paths[t % paths.len()];
            let j = 1 + t / paths.len();
            let mut mutated = original.clone();
            mutate(mutated.pointer_mut(path).expect("leaf path"), j, &ids);
            ensure!(
                mutated != original,
                "{}: mutation {t} at {path} changed nothing",
                case.algorithm
            );
            let bad = dir.path().join(format!("{}.mut{t}.json", case.algorithm));
            std::fs::write(&bad, serde_json::to_vec_pretty(&mutated)?)?;
            let code = verify_code(&bad, &inst, false);
            ensure!(
                code == 1,
                "{}: mutation at {path} (x{j}) exited {code}",
                case.algorithm
            );
            if verify_code(&bad, &inst, true) == 1 {
                sound_caught += 1;
            }
        }
        report.push(format!("{} {sound_caught}", case.algorithm));
    }
    Ok(format!(
        "8 algorithms x {C11_MUTATIONS} mutations all exit 1, originals exit 0 (caught by soundness alone: {})",
        report.join(", ")
    ))
}

fn c12() -> Check {
    let dir = tempfile::TempDir::new()?;
    let inst = dir.path().join("tight.json");
    let code = status(
        helly()
            .args([
                "gen",
                "tight-fractional",
                "--dim",
                "2",
                "--n",
                "12",
                "--out",
            ])
            .arg(&inst),
    );
    ensure!(code == 0, "gen exited {code}");
    let out = helly()
        .args(["density", "--r", "2", "--instance"])
        .arg(&inst)
        .output()?;
    ensure!(
        out.status.code() == Some(0),
        "density exited {:?}",
        out.status.code()
    );
    let fixture = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures/tight_fractional_d2_n12_density.json");
    ensure!(
        out.stdout == std::fs::read(&fixture)?,
        "report differs from the stored fixture"
    );
    let loaded = Loaded::read(&inst)?;
    let oracle = brute_density(
        &loaded.family,
        2,
        &MonotoneProperty::NonEmpty,
        &OracleLimits::default(),
    )?;
    // two classes of six slabs; only cross-class pairs meet: 36 of C(12,2) = 66
    ensure!(oracle == q(36, 66), "oracle density {oracle}");
    let v: Value = serde_json::from_slice(&out.stdout)?;
    ensure!(
        v["density"] == "6/11" && v["intersecting"] == 36 && v["total"] == 66,
        "report {v}"
    );
    Ok(
        "density 6/11 (36 of 66 pairs), matches the fixture and the reverse-enumeration oracle"
            .to_string(),
    )
}

fn main() {
    let criteria: Vec<(&str, fn() -> Check)> = vec![
        ("strong Helly witness", c1),
        ("colorful selection", c2),
        ("tightness of 2d", c3),
        ("fractional k-tuples", c4),
        ("consistently ordered chains", c5),
        ("weak colorful selection", c6),
        ("(k+1)-tuple pipeline", c7),
        ("pair density", c8),
        ("(p,q) piercing", c9),
        ("monotone property contract", c10),
        ("certificate mutation suite", c11),
        ("fractional tightness density", c12),
    ];
    let only: Option<usize> = std::env::var("HELLY_ACCEPTANCE_ONLY")
        .ok()
        .and_then(|s| s.parse().ok());
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let n = i + 1;
        if only.is_some_and(|o| o != n) {
            continue;
        }
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check));
        let elapsed = start.elapsed();
        match outcome {
            Ok(Ok(detail)) => println!("PASS {n:>2} {name}: {detail} [{elapsed:.1?}]"),
            Ok(Err(e)) => {
                failures += 1;
                println!("FAIL {n:>2} {name}: {e} [{elapsed:.1?}]");
            }
            Err(p) => {
                failures += 1;
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL {n:>2} {name}: panic {msg} [{elapsed:.1?}]");
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
