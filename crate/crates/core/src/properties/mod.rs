//! Monotone properties of H-convex sets.
//!
//! A property is monotone when it is preserved by enlarging the set. Every
//! selection routine here certifies containment through offset dominance, so
//! monotonicity is what turns a certified containment into a certified
//! property. Properties are decided on the represented point set (emptiness,
//! membership, volume), never on raw offsets.

mod fourier_motzkin;

use serde::{Deserialize, Serialize};

pub use fourier_motzkin::{feasible, feasible_system, feasible_with_order};

use fourier_motzkin::feasible_offsets;

use crate::error::{HellyError, Result};
use crate::hsystem::{dot, AxisBox, HSet, HSystem};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MonotoneProperty {
    NonEmpty,
    /// Volume at least `v`; boxes only.
    VolumeAtLeast {
        v: Rational,
    },
    /// Contains at least `n` of the given points (boundary counts).
    ContainsAtLeast {
        n: usize,
        points: Vec<Vec<Rational>>,
    },
    AllOf {
        of: Vec<MonotoneProperty>,
    },
    AnyOf {
        of: Vec<MonotoneProperty>,
    },
}

impl MonotoneProperty {
    pub fn volume_at_least(v: Rational) -> Self {
        MonotoneProperty::VolumeAtLeast { v }
    }

    pub fn contains_at_least(n: usize, points: Vec<Vec<Rational>>) -> Self {
        MonotoneProperty::ContainsAtLeast { n, points }
    }

    /// Validates the property against a system and precomputes what evaluation needs.
    pub fn prepare(&self, system: &HSystem) -> Result<PreparedProperty> {
        Ok(match self {
            MonotoneProperty::NonEmpty => {
                if system.is_box_system() {
                    PreparedProperty::BoxNonEmpty
                } else {
                    PreparedProperty::NonEmpty(system.clone())
                }
            }
            MonotoneProperty::VolumeAtLeast { v } => {
                if !system.is_box_system() {
                    return Err(HellyError::VolumeUnsupported);
                }
                if v.is_negative() {
                    return Err(HellyError::InvalidParameter(
                        "volume threshold must be nonnegative".into(),
                    ));
                }
                PreparedProperty::Volume(*v)
            }
            MonotoneProperty::ContainsAtLeast { n, points } => {
                if *n == 0 {
                    return Err(HellyError::InvalidParameter(
                        "point count threshold must be positive".into(),
                    ));
                }
                for p in points {
                    if p.len() != system.dim() {
                        return Err(HellyError::DimensionMismatch {
                            expected: system.dim(),
                            found: p.len(),
                        });
                    }
                }
                let levels = points
                    .iter()
                    .map(|p| system.normals().iter().map(|nrm| dot(nrm, p)).collect())
                    .collect();
                PreparedProperty::Contains { n: *n, levels }
            }
            MonotoneProperty::AllOf { of } => PreparedProperty::All(
                of.iter()
                    .map(|p| p.prepare(system))
                    .collect::<Result<_>>()?,
            ),
            MonotoneProperty::AnyOf { of } => PreparedProperty::Any(
                of.iter()
                    .map(|p| p.prepare(system))
                    .collect::<Result<_>>()?,
            ),
        })
    }

    pub fn eval(&self, s: &HSet) -> Result<bool> {
        Ok(self.prepare(s.system())?.holds(s.offsets()))
    }
}

/// Decides `P` on the set represented by `s`.
pub fn eval(p: &MonotoneProperty, s: &HSet) -> Result<bool> {
    p.eval(s)
}

/// A property bound to one system; evaluation works on raw offset slices.
#[derive(Debug, Clone)]
pub enum PreparedProperty {
    BoxNonEmpty,
    NonEmpty(HSystem),
    Volume(Rational),
    Contains {
        n: usize,
        /// `levels[p][i] = <normal_i, point_p>`
        levels: Vec<Vec<Rational>>,
    },
    All(Vec<PreparedProperty>),
    Any(Vec<PreparedProperty>),
}

impl PreparedProperty {
    pub fn holds(&self, offsets: &[Rational]) -> bool {
        match self {
            PreparedProperty::BoxNonEmpty => offsets.chunks_exact(2).all(|c| c[0] >= -c[1]),
            PreparedProperty::NonEmpty(system) => {
                let order: Vec<usize> = (0..system.dim()).collect();
                feasible_offsets(system, offsets, &order)
            }
            PreparedProperty::Volume(v) => offsets_volume(offsets) >= *v,
            PreparedProperty::Contains { n, levels } => {
                let mut count = 0;
                for level in levels {
                    if level.iter().zip(offsets).all(|(l, b)| l <= b) {
                        count += 1;
                        if count >= *n {
                            return true;
                        }
                    }
                }
                false
            }
            PreparedProperty::All(ps) => ps.iter().all(|p| p.holds(offsets)),
            PreparedProperty::Any(ps) => ps.iter().any(|p| p.holds(offsets)),
        }
    }
}

/// Volume of a canonical-box offset vector; zero when empty.
fn offsets_volume(offsets: &[Rational]) -> Rational {
    let mut vol = Rational::ONE;
    for c in offsets.chunks_exact(2) {
        let side = c[0] + c[1];
        if !side.is_positive() {
            return Rational::ZERO;
        }
        vol = vol * side;
    }
    vol
}

/// `∏_j max(0, hi_j - lo_j)`.
pub fn box_volume(b: &AxisBox) -> Rational {
    let mut vol = Rational::ONE;
    for (lo, hi) in b.lo.iter().zip(&b.hi) {
        let side = *hi - *lo;
        if !side.is_positive() {
            return Rational::ZERO;
        }
        vol = vol * side;
    }
    vol
}

/// Volume of an H-set over a canonical box system.
pub fn hset_volume(s: &HSet) -> Result<Rational> {
    if !s.system().is_box_system() {
        return Err(HellyError::VolumeUnsupported);
    }
    Ok(offsets_volume(s.offsets()))
}

/// Number of points of `points` lying in `s` (closed).
pub fn count_points(s: &HSet, points: &[Vec<Rational>]) -> Result<usize> {
    let mut count = 0;
    for p in points {
        if s.contains_point(p)? {
            count += 1;
        }
    }
    Ok(count)
}
