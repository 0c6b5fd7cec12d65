//! Deterministic instance generators: the tightness constructions and seeded
//! random and dense families.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{HellyError, Result};
use crate::fractional::{binomial, density};
use crate::hsystem::{canonical_box_system, AxisBox, Family, HSet, HSystem, MemberId};
use crate::properties::{hset_volume, MonotoneProperty};
use crate::rational::Rational;

/// Serializable description of a generated instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum GenSpec {
    TightColorful {
        dim: usize,
        epsilon: Rational,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        clip: Option<Rational>,
    },
    TightFractional {
        dim: usize,
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        thickness: Option<Rational>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        clip: Option<Rational>,
    },
    Random {
        dim: usize,
        n: usize,
        seed: u64,
        /// Direction system; the canonical box system when absent.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        normals: Option<Vec<Vec<Rational>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        span: Option<i64>,
        /// Split the members round-robin into this many color classes.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        classes: Option<usize>,
    },
    Dense {
        dim: usize,
        n: usize,
        alpha: Rational,
        r: usize,
        seed: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        property: Option<MonotoneProperty>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        normals: Option<Vec<Vec<Rational>>>,
    },
}

/// A generated family with its natural color classes and property.
#[derive(Debug, Clone)]
pub struct Generated {
    pub family: Family,
    pub classes: Option<Vec<Vec<MemberId>>>,
    pub property: MonotoneProperty,
}

fn system_for(dim: usize, normals: &Option<Vec<Vec<Rational>>>) -> Result<Arc<HSystem>> {
    match normals {
        None => canonical_box_system(dim),
        Some(ns) => Ok(Arc::new(HSystem::new(dim, ns.clone())?)),
    }
}

/// Builds the instance a spec describes.
pub fn generate(spec: &GenSpec) -> Result<Generated> {
    match spec {
        GenSpec::TightColorful { dim, epsilon, clip } => {
            let family = gen_tight_colorful(*dim, *epsilon, *clip)?;
            let classes = family.ids().iter().map(|id| vec![id.clone()]).collect();
            Ok(Generated {
                family,
                classes: Some(classes),
                property: MonotoneProperty::volume_at_least(Rational::ONE),
            })
        }
        GenSpec::TightFractional {
            dim,
            n,
            thickness,
            clip,
        } => {
            let (family, classes) = gen_tight_fractional(*dim, *n, *thickness, *clip)?;
            Ok(Generated {
                family,
                classes: Some(classes),
                property: MonotoneProperty::NonEmpty,
            })
        }
        GenSpec::Random {
            dim,
            n,
            seed,
            normals,
            span,
            classes,
        } => {
            let system = system_for(*dim, normals)?;
            let family = gen_random(&system, *n, span.unwrap_or(10), *seed)?;
            let classes = match classes {
                None => None,
                Some(0) => {
                    return Err(HellyError::InvalidParameter(
                        "class count must be positive".into(),
                    ))
                }
                Some(c) => Some(
                    (0..*c)
                        .map(|j| family.ids().iter().skip(j).step_by(*c).cloned().collect())
                        .collect(),
                ),
            };
            Ok(Generated {
                family,
                classes,
                property: MonotoneProperty::NonEmpty,
            })
        }
        GenSpec::Dense {
            dim,
            n,
            alpha,
            r,
            seed,
            property,
            normals,
        } => {
            let system = system_for(*dim, normals)?;
            let property = property.clone().unwrap_or(MonotoneProperty::NonEmpty);
            let family = gen_dense(&system, *n, *alpha, *r, &property, *seed)?;
            Ok(Generated {
                family,
                classes: None,
                property,
            })
        }
    }
}

/// Smallest clip half-width for which the tight colorful construction has the volume gap.
pub fn minimal_clip(dim: usize, epsilon: Rational) -> Rational {
    if dim == 1 {
        Rational::ONE
    } else {
        Rational::ONE / epsilon
    }
}

/// `2d` boxes from the halfspaces `x_j >= 0`, `x_j <= s_j` with `s = (1, ..., 1, epsilon)`,
/// clipped to `[-M, M]^d`.
///
/// The whole family meets in a box of volume `epsilon`; dropping any one member
/// leaves volume at least 1. Per axis the upper-bound box precedes the lower-bound box.
/// `clip` defaults to `2d / epsilon`.
pub fn gen_tight_colorful(dim: usize, epsilon: Rational, clip: Option<Rational>) -> Result<Family> {
    if !epsilon.is_positive() || epsilon >= Rational::ONE {
        return Err(HellyError::InvalidParameter(
            "epsilon must be in (0,1)".into(),
        ));
    }
    if dim == 0 {
        return Err(HellyError::InvalidParameter(
            "dimension must be positive".into(),
        ));
    }
    let dim_r = Rational::from_integer(dim as i128);
    let m = clip.unwrap_or(Rational::from_integer(2) * dim_r / epsilon);
    if m < Rational::ONE {
        return Err(HellyError::ClipTooSmall {
            given: m.to_string(),
            minimal: minimal_clip(dim, epsilon).to_string(),
        });
    }
    let system = canonical_box_system(dim)?;
    let mut boxes = Vec::with_capacity(2 * dim);
    for j in 0..dim {
        let s = if j + 1 == dim { epsilon } else { Rational::ONE };
        let lo = vec![-m; dim];
        let mut hi = vec![m; dim];
        hi[j] = s;
        boxes.push(AxisBox::new(lo.clone(), hi)?);
        let mut lo2 = lo;
        lo2[j] = Rational::ZERO;
        boxes.push(AxisBox::new(lo2, vec![m; dim])?);
    }
    let sets = boxes
        .iter()
        .map(|b| HSet::from_box(&system, b))
        .collect::<Result<Vec<_>>>()?;
    let family = Family::from_sets(system, "b", sets)?;

    let full = hset_volume(&family.intersection()?)?;
    let gap_ok = (0..family.len()).all(|skip| {
        let keep: Vec<usize> = (0..family.len()).filter(|&i| i != skip).collect();
        family
            .intersection_of(&keep)
            .and_then(|s| hset_volume(&s))
            .is_ok_and(|v| v >= Rational::ONE)
    });
    if full != epsilon || !gap_ok {
        return Err(HellyError::ClipTooSmall {
            given: m.to_string(),
            minimal: minimal_clip(dim, epsilon).to_string(),
        });
    }
    Ok(family)
}

/// `n` slabs of the given thickness, split over the `d` axes.
///
/// Axis `i` gets `floor(n/d)` slabs, or one more for the first `n mod d` axes;
/// slab `j` on axis `i` is `2j <= x_i <= 2j + thickness`, clipped to `[-M, M]^d`.
/// Returns the family and its per-axis classes. `thickness` defaults to 1/4,
/// `clip` to twice the largest class size.
pub fn gen_tight_fractional(
    dim: usize,
    n: usize,
    thickness: Option<Rational>,
    clip: Option<Rational>,
) -> Result<(Family, Vec<Vec<MemberId>>)> {
    if dim == 0 || n < dim {
        return Err(HellyError::InvalidParameter(format!(
            "need n >= dim >= 1, got n = {n}, dim = {dim}"
        )));
    }
    let th = thickness.unwrap_or(Rational::new(1, 4).expect("nonzero"));
    if !th.is_positive() || th >= Rational::from_integer(2) {
        return Err(HellyError::InvalidParameter(
            "slab thickness must be in (0,2) so slabs stay disjoint".into(),
        ));
    }
    let counts: Vec<usize> = (0..dim)
        .map(|i| n / dim + usize::from(i < n % dim))
        .collect();
    let cmax = counts.iter().copied().max().unwrap_or(0);
    let reach = Rational::from_integer(2 * (cmax as i128 - 1)) + th;
    let m = clip.unwrap_or(Rational::from_integer(2 * cmax as i128));
    if m < reach {
        return Err(HellyError::ClipTooSmall {
            given: m.to_string(),
            minimal: reach.to_string(),
        });
    }
    let system = canonical_box_system(dim)?;
    let mut sets = Vec::with_capacity(n);
    let mut axis_of = Vec::with_capacity(n);
    for (i, &c) in counts.iter().enumerate() {
        for j in 0..c {
            let mut lo = vec![-m; dim];
            let mut hi = vec![m; dim];
            lo[i] = Rational::from_integer(2 * j as i128);
            hi[i] = lo[i] + th;
            sets.push(HSet::from_box(&system, &AxisBox::new(lo, hi)?)?);
            axis_of.push(i);
        }
    }
    let family = Family::from_sets(system, "s", sets)?;
    let mut classes = vec![Vec::new(); dim];
    for (p, &i) in axis_of.iter().enumerate() {
        classes[i].push(family.id(p).clone());
    }
    Ok((family, classes))
}

/// Seeded random family.
///
/// Boxes take endpoints uniformly from the integers in `[-span, span]`. Other
/// systems take a random lattice center and add a slack in `[0, span]` to each
/// of its levels, so members are nonempty.
pub fn gen_random(system: &Arc<HSystem>, n: usize, span: i64, seed: u64) -> Result<Family> {
    if span <= 0 {
        return Err(HellyError::InvalidParameter("span must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = system.dim();
    let mut sets = Vec::with_capacity(n);
    for _ in 0..n {
        let offsets = if system.is_box_system() {
            let mut o = Vec::with_capacity(2 * dim);
            for _ in 0..dim {
                let a = rng.gen_range(-span..=span);
                let b = rng.gen_range(-span..=span);
                o.push(Rational::from(a.max(b)));
                o.push(Rational::from(-a.min(b)));
            }
            o
        } else {
            let center: Vec<Rational> = (0..dim)
                .map(|_| Rational::from(rng.gen_range(-span..=span)))
                .collect();
            system
                .normals()
                .iter()
                .map(|nrm| {
                    crate::hsystem::dot(nrm, &center) + Rational::from(rng.gen_range(0..=span))
                })
                .collect()
        };
        sets.push(HSet::new(Arc::clone(system), offsets)?);
    }
    Family::from_sets(Arc::clone(system), "m", sets)
}

/// Seeded family whose `r`-tuple `P`-density is at least `alpha`.
///
/// A core of `c` members, the least with `C(c, r) >= alpha C(n, r)`, all
/// contain one set satisfying `P`; the rest are far translates. Positions are
/// shuffled and the density is measured exactly, growing the core on a miss.
pub fn gen_dense(
    system: &Arc<HSystem>,
    n: usize,
    alpha: Rational,
    r: usize,
    p: &MonotoneProperty,
    seed: u64,
) -> Result<Family> {
    if !alpha.is_positive() || alpha > Rational::ONE {
        return Err(HellyError::InvalidParameter(format!(
            "alpha must be in (0,1], got {alpha}"
        )));
    }
    if r == 0 || r > n {
        return Err(HellyError::InvalidParameter(format!(
            "need 1 <= r <= n, got r = {r}, n = {n}"
        )));
    }
    let prop = p.prepare(system)?;
    let mut scale = Rational::ONE;
    let base = loop {
        let offsets = vec![scale; system.k()];
        if prop.holds(&offsets) {
            break offsets;
        }
        if scale > Rational::from_integer(1 << 40) {
            return Err(HellyError::DensityUnreachable {
                target: alpha.to_string(),
            });
        }
        scale = scale * Rational::from_integer(2);
    };
    let total = binomial(n as u128, r as u128).ok_or(HellyError::Overflow("binomial"))?;
    let mut core = (r..=n)
        .find(|&c| {
            let got = binomial(c as u128, r as u128).unwrap_or(u128::MAX);
            // got / total >= alpha
            Rational::from_counts(got, total).map_or(true, |d| d >= alpha)
        })
        .unwrap_or(n);

    let span = scale.ceil().max(1) as i64 * 4;
    let far = Rational::from_integer((span as i128 + 1) * 16);
    loop {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut sets = Vec::with_capacity(n);
        for j in 0..n {
            let mut offsets: Vec<Rational> = base
                .iter()
                .map(|&b| b + Rational::from(rng.gen_range(0..=span)))
                .collect();
            if j >= core {
                // translate far from the core along a random lattice direction
                let shift = far * Rational::from_integer((j - core + 1) as i128);
                let dir: Vec<Rational> = (0..system.dim())
                    .map(|_| Rational::from(rng.gen_range(-1i64..=1)))
                    .collect();
                let dir = if dir.iter().all(Rational::is_zero) {
                    let mut d = vec![Rational::ZERO; system.dim()];
                    d[0] = Rational::ONE;
                    d
                } else {
                    dir
                };
                let v: Vec<Rational> = dir.iter().map(|&x| x * shift).collect();
                offsets = offsets
                    .iter()
                    .zip(system.normals())
                    .map(|(&o, nrm)| o + crate::hsystem::dot(nrm, &v))
                    .collect();
            }
            sets.push(HSet::new(Arc::clone(system), offsets)?);
        }
        sets.shuffle(&mut rng);
        let family = Family::from_sets(Arc::clone(system), "m", sets)?;
        if density(&family, r, p)? >= alpha {
            return Ok(family);
        }
        if core == n {
            return Err(HellyError::DensityUnreachable {
                target: alpha.to_string(),
            });
        }
        core += 1;
    }
}
