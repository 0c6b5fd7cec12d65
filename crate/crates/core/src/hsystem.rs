//! Direction systems and H-convex sets.
//!
//! An [`HSystem`] fixes `k` normal vectors `n_1..n_k` in `R^d`. An [`HSet`]
//! over it is the intersection of the translated halfspaces
//! `{x : <n_i, x> <= b_i}` and is stored only as its offset vector `b`.
//! Intersection is the componentwise minimum of offsets, and the `i`-th
//! ordering compares sets by `b_i` alone.
//!
//! Boxes are the canonical case with normals `+e_1, -e_1, ..., +e_d, -e_d`,
//! so a box `[lo, hi]` has offsets `(hi_1, -lo_1, ..., hi_d, -lo_d)`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{HellyError, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HSystem {
    dim: usize,
    normals: Vec<Vec<Rational>>,
    box_dim: Option<usize>,
}

impl HSystem {
    pub fn new(dim: usize, normals: Vec<Vec<Rational>>) -> Result<Self> {
        if dim == 0 {
            return Err(HellyError::InvalidSystem(
                "dimension must be positive".into(),
            ));
        }
        if normals.is_empty() {
            return Err(HellyError::InvalidSystem(
                "at least one normal required".into(),
            ));
        }
        for (i, n) in normals.iter().enumerate() {
            if n.len() != dim {
                return Err(HellyError::DimensionMismatch {
                    expected: dim,
                    found: n.len(),
                });
            }
            if n.iter().all(Rational::is_zero) {
                return Err(HellyError::InvalidSystem(format!("normal {i} is zero")));
            }
        }
        let box_dim = (normals == canonical_normals(dim)).then_some(dim);
        Ok(HSystem {
            dim,
            normals,
            box_dim,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of halfspace directions.
    pub fn k(&self) -> usize {
        self.normals.len()
    }

    pub fn normals(&self) -> &[Vec<Rational>] {
        &self.normals
    }

    pub fn normal(&self, i: usize) -> &[Rational] {
        &self.normals[i]
    }

    pub fn is_box_system(&self) -> bool {
        self.box_dim.is_some()
    }

    pub(crate) fn check_ordering(&self, i: usize) -> Result<()> {
        if i >= self.k() {
            return Err(HellyError::OrderingOutOfRange {
                index: i,
                k: self.k(),
            });
        }
        Ok(())
    }
}

fn canonical_normals(dim: usize) -> Vec<Vec<Rational>> {
    let mut normals = Vec::with_capacity(2 * dim);
    for j in 0..dim {
        for sign in [1, -1] {
            let mut n = vec![Rational::ZERO; dim];
            n[j] = Rational::from_integer(sign);
            normals.push(n);
        }
    }
    normals
}

/// The `2·dim` coordinate directions `(+e_1, -e_1, ..., +e_d, -e_d)`.
pub fn canonical_box_system(dim: usize) -> Result<Arc<HSystem>> {
    HSystem::new(dim, canonical_normals(dim)).map(Arc::new)
}

pub(crate) fn same_system(a: &Arc<HSystem>, b: &Arc<HSystem>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// An axis-parallel box `[lo_1, hi_1] × ... × [lo_d, hi_d]`. Empty when some `lo_j > hi_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AxisBox {
    pub lo: Vec<Rational>,
    pub hi: Vec<Rational>,
}

impl AxisBox {
    pub fn new(lo: Vec<Rational>, hi: Vec<Rational>) -> Result<Self> {
        if lo.is_empty() {
            return Err(HellyError::InvalidBox("dimension must be positive".into()));
        }
        if lo.len() != hi.len() {
            return Err(HellyError::DimensionMismatch {
                expected: lo.len(),
                found: hi.len(),
            });
        }
        Ok(AxisBox { lo, hi })
    }

    /// Convenience constructor from `(lo, hi)` integer pairs.
    pub fn from_intervals(intervals: &[(i64, i64)]) -> Result<Self> {
        let lo = intervals.iter().map(|&(l, _)| Rational::from(l)).collect();
        let hi = intervals.iter().map(|&(_, h)| Rational::from(h)).collect();
        AxisBox::new(lo, hi)
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lo.iter().zip(&self.hi).any(|(l, h)| l > h)
    }
}

/// An H-convex set, stored as its offset vector over a shared system.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HSet {
    system: Arc<HSystem>,
    offsets: Vec<Rational>,
}

impl HSet {
    pub fn new(system: Arc<HSystem>, offsets: Vec<Rational>) -> Result<Self> {
        if offsets.len() != system.k() {
            return Err(HellyError::DimensionMismatch {
                expected: system.k(),
                found: offsets.len(),
            });
        }
        Ok(HSet { system, offsets })
    }

    /// Embeds a box into a canonical box system of matching dimension.
    pub fn from_box(system: &Arc<HSystem>, b: &AxisBox) -> Result<Self> {
        if system.box_dim != Some(b.dim()) {
            return Err(HellyError::NotBoxSystem);
        }
        let mut offsets = Vec::with_capacity(2 * b.dim());
        for (lo, hi) in b.lo.iter().zip(&b.hi) {
            offsets.push(*hi);
            offsets.push(-*lo);
        }
        Ok(HSet {
            system: Arc::clone(system),
            offsets,
        })
    }

    pub fn to_box(&self) -> Result<AxisBox> {
        let d = self.system.box_dim.ok_or(HellyError::NotBoxSystem)?;
        let hi = (0..d).map(|j| self.offsets[2 * j]).collect();
        let lo = (0..d).map(|j| -self.offsets[2 * j + 1]).collect();
        AxisBox::new(lo, hi)
    }

    pub fn system(&self) -> &Arc<HSystem> {
        &self.system
    }

    pub fn offsets(&self) -> &[Rational] {
        &self.offsets
    }

    pub fn offset(&self, i: usize) -> Rational {
        self.offsets[i]
    }

    /// Closed membership test: every inequality `<n_i, p> <= b_i` holds.
    pub fn contains_point(&self, point: &[Rational]) -> Result<bool> {
        if point.len() != self.system.dim() {
            return Err(HellyError::DimensionMismatch {
                expected: self.system.dim(),
                found: point.len(),
            });
        }
        Ok(self
            .system
            .normals
            .iter()
            .zip(&self.offsets)
            .all(|(n, b)| dot(n, point) <= *b))
    }

    /// The translate `self + v`: each offset shifts by `<n_i, v>`.
    pub fn translate(&self, v: &[Rational]) -> Result<HSet> {
        if v.len() != self.system.dim() {
            return Err(HellyError::DimensionMismatch {
                expected: self.system.dim(),
                found: v.len(),
            });
        }
        let offsets = self
            .system
            .normals
            .iter()
            .zip(&self.offsets)
            .map(|(n, b)| *b + dot(n, v))
            .collect();
        Ok(HSet {
            system: Arc::clone(&self.system),
            offsets,
        })
    }
}

impl fmt::Debug for HSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("HSet").field(&self.offsets).finish()
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| *x * *y).sum()
}

pub fn box_to_hset(b: &AxisBox) -> Result<HSet> {
    let system = canonical_box_system(b.dim())?;
    HSet::from_box(&system, b)
}

pub fn hset_to_box(s: &HSet) -> Result<AxisBox> {
    s.to_box()
}

fn check_same(a: &HSet, b: &HSet) -> Result<()> {
    if same_system(&a.system, &b.system) {
        Ok(())
    } else {
        Err(HellyError::MixedSystems)
    }
}

/// Componentwise minimum of offsets, which represents the set intersection.
pub fn intersect<'a, I>(sets: I) -> Result<HSet>
where
    I: IntoIterator<Item = &'a HSet>,
{
    let mut iter = sets.into_iter();
    let first = iter
        .next()
        .ok_or(HellyError::Empty("intersect needs at least one set"))?;
    let mut offsets = first.offsets.clone();
    for s in iter {
        check_same(first, s)?;
        min_into(&mut offsets, &s.offsets);
    }
    Ok(HSet {
        system: Arc::clone(&first.system),
        offsets,
    })
}

#[inline]
pub(crate) fn min_into(acc: &mut [Rational], other: &[Rational]) {
    for (a, b) in acc.iter_mut().zip(other) {
        if *b < *a {
            *a = *b;
        }
    }
}

/// The `i`-th ordering: `Less` iff the `i`-th halfspace of `s1` lies strictly inside that of `s2`.
pub fn compare(s1: &HSet, s2: &HSet, i: usize) -> Result<Ordering> {
    check_same(s1, s2)?;
    s1.system.check_ordering(i)?;
    Ok(s1.offsets[i].cmp(&s2.offsets[i]))
}

/// Offset dominance; `true` certifies `s1 ⊆ s2`.
pub fn offset_leq(s1: &HSet, s2: &HSet) -> Result<bool> {
    check_same(s1, s2)?;
    Ok(offsets_leq(&s1.offsets, &s2.offsets))
}

#[inline]
pub(crate) fn offsets_leq(a: &[Rational], b: &[Rational]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Stable identifier of a family member. Witnesses always refer to members by id.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MemberId(pub String);

impl MemberId {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for MemberId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for MemberId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<&str> for MemberId {
    fn from(s: &str) -> Self {
        MemberId(s.to_string())
    }
}

impl From<String> for MemberId {
    fn from(s: String) -> Self {
        MemberId(s)
    }
}

/// Zero-padded ids `prefix0..prefix{n-1}`, so string order matches index order.
pub fn sequential_ids(prefix: &str, n: usize) -> Vec<MemberId> {
    let width = n.saturating_sub(1).to_string().len();
    (0..n)
        .map(|i| MemberId(format!("{prefix}{i:0width$}")))
        .collect()
}

/// An indexed collection of sets over one system, with unique ids.
#[derive(Clone, Debug)]
pub struct Family {
    system: Arc<HSystem>,
    ids: Vec<MemberId>,
    members: Vec<HSet>,
    index: HashMap<MemberId, usize>,
}

impl Family {
    pub fn new(system: Arc<HSystem>, entries: Vec<(MemberId, HSet)>) -> Result<Self> {
        let mut ids = Vec::with_capacity(entries.len());
        let mut members = Vec::with_capacity(entries.len());
        let mut index = HashMap::with_capacity(entries.len());
        for (id, set) in entries {
            if !same_system(&system, &set.system) {
                return Err(HellyError::MixedSystems);
            }
            if index.insert(id.clone(), ids.len()).is_some() {
                return Err(HellyError::DuplicateId(id));
            }
            ids.push(id);
            members.push(set);
        }
        Ok(Family {
            system,
            ids,
            members,
            index,
        })
    }

    /// Assigns sequential ids with the given prefix.
    pub fn from_sets(system: Arc<HSystem>, prefix: &str, sets: Vec<HSet>) -> Result<Self> {
        let ids = sequential_ids(prefix, sets.len());
        Family::new(system, ids.into_iter().zip(sets).collect())
    }

    pub fn from_boxes(boxes: &[AxisBox]) -> Result<Self> {
        let first = boxes.first().ok_or(HellyError::Empty("no boxes"))?;
        let system = canonical_box_system(first.dim())?;
        let sets = boxes
            .iter()
            .map(|b| HSet::from_box(&system, b))
            .collect::<Result<Vec<_>>>()?;
        Family::from_sets(system, "b", sets)
    }

    pub fn empty(system: Arc<HSystem>) -> Self {
        Family {
            system,
            ids: Vec::new(),
            members: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn system(&self) -> &Arc<HSystem> {
        &self.system
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn ids(&self) -> &[MemberId] {
        &self.ids
    }

    pub fn members(&self) -> &[HSet] {
        &self.members
    }

    pub fn id(&self, idx: usize) -> &MemberId {
        &self.ids[idx]
    }

    pub fn get(&self, idx: usize) -> &HSet {
        &self.members[idx]
    }

    pub fn offsets(&self, idx: usize) -> &[Rational] {
        &self.members[idx].offsets
    }

    pub fn position(&self, id: &MemberId) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn by_id(&self, id: &MemberId) -> Result<&HSet> {
        self.position(id)
            .map(|i| &self.members[i])
            .ok_or_else(|| HellyError::UnknownId(id.clone()))
    }

    pub fn contains_id(&self, id: &MemberId) -> bool {
        self.index.contains_key(id)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MemberId, &HSet)> {
        self.ids.iter().zip(&self.members)
    }

    /// Members at the given positions, kept in family order.
    pub fn subfamily(&self, positions: &[usize]) -> Family {
        let mut sorted = positions.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let entries = sorted
            .into_iter()
            .map(|i| (self.ids[i].clone(), self.members[i].clone()))
            .collect();
        Family::new(Arc::clone(&self.system), entries).expect("subfamily of a valid family")
    }

    pub fn subfamily_by_ids(&self, ids: &[MemberId]) -> Result<Family> {
        let positions = self.positions_of(ids)?;
        Ok(self.subfamily(&positions))
    }

    pub fn positions_of(&self, ids: &[MemberId]) -> Result<Vec<usize>> {
        ids.iter()
            .map(|id| {
                self.position(id)
                    .ok_or_else(|| HellyError::UnknownId(id.clone()))
            })
            .collect()
    }

    /// Intersection of all members.
    pub fn intersection(&self) -> Result<HSet> {
        intersect(&self.members)
    }

    /// Intersection of the members at `positions`.
    pub fn intersection_of(&self, positions: &[usize]) -> Result<HSet> {
        intersect(positions.iter().map(|&i| &self.members[i]))
    }

    /// Total order for ordering `i`: offset first, then member id.
    pub fn cmp_members(&self, a: usize, b: usize, i: usize) -> Ordering {
        self.members[a].offsets[i]
            .cmp(&self.members[b].offsets[i])
            .then_with(|| self.ids[a].cmp(&self.ids[b]))
    }

    /// Member positions sorted by the tie-broken `i`-th ordering.
    pub fn sorted_by(&self, i: usize) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.cmp_members(a, b, i));
        order
    }

    /// Position of the first member under the tie-broken `i`-th ordering.
    pub fn argmin(&self, i: usize) -> Option<usize> {
        (0..self.len()).min_by(|&a, &b| self.cmp_members(a, b, i))
    }
}

/// Color classes sharing one system.
#[derive(Clone, Debug)]
pub struct ColorClasses {
    system: Arc<HSystem>,
    classes: Vec<Family>,
}

impl ColorClasses {
    pub fn new(classes: Vec<Family>) -> Result<Self> {
        let first = classes
            .first()
            .ok_or(HellyError::Empty("no color classes"))?;
        let system = Arc::clone(first.system());
        for (c, class) in classes.iter().enumerate() {
            if !same_system(&system, class.system()) {
                return Err(HellyError::MixedSystems);
            }
            if class.is_empty() {
                return Err(HellyError::EmptyClass(c));
            }
        }
        Ok(ColorClasses { system, classes })
    }

    /// Classes given as id lists into a shared family.
    pub fn from_family(family: &Family, classes: &[Vec<MemberId>]) -> Result<Self> {
        let classes = classes
            .iter()
            .map(|ids| {
                let positions = family.positions_of(ids)?;
                let entries = positions
                    .iter()
                    .map(|&p| (family.id(p).clone(), family.get(p).clone()))
                    .collect();
                Family::new(Arc::clone(family.system()), entries)
            })
            .collect::<Result<Vec<_>>>()?;
        ColorClasses::new(classes)
    }

    pub fn system(&self) -> &Arc<HSystem> {
        &self.system
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Family] {
        &self.classes
    }

    pub fn class(&self, c: usize) -> &Family {
        &self.classes[c]
    }

    pub fn require_count(&self, expected: usize) -> Result<()> {
        if self.classes.len() != expected {
            return Err(HellyError::ClassCount {
                expected,
                found: self.classes.len(),
            });
        }
        Ok(())
    }
}
