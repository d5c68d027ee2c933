//! Finite topological spaces.
//!
//! Every finite topology is closed under arbitrary intersections, so a space
//! is fully described by the minimal open neighbourhood of each point. A
//! [`FinSpace`] stores those neighbourhoods and materialises its family of
//! open sets on demand; openness, continuity and product checks all run on
//! the neighbourhoods and never need the (possibly exponential) open family.

mod enumerate;
mod ops;
mod props;
mod subset;

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

pub use enumerate::{
    canonical_code, enumerate_topologies, enumerate_topologies_with, family_code,
    isomorphism_classes, spaces_up_to, MAX_ENUM_POINTS,
};
pub use ops::{closure_of, interior_of, product, product_index, subspace};
pub use props::{
    bounded_check, compact_check, is_bounded_in, is_bounded_in_finite, is_compact_subset,
    is_compact_subset_finite, local_profile, local_profile_with, separation_profile, Checked,
    LocalProfile, Provenance, Separation, DEFAULT_COVER_BUDGET,
};
pub use subset::{Points, Subset, SubsetFamily, MAX_POINTS};

use crate::error::{AxiomViolation, Result, TopoError};

/// A topological space on the points `0..size`.
#[derive(Clone)]
pub struct FinSpace {
    size: usize,
    nbhd: Vec<Subset>,
    labels: Option<Vec<String>>,
    opens: OnceLock<SubsetFamily>,
}

impl FinSpace {
    /// Validates `opens` against the topology axioms.
    pub fn new<I: IntoIterator<Item = Subset>>(size: usize, opens: I) -> Result<Self> {
        make_space(size, &SubsetFamily::new(size, opens)?)
    }

    /// Builds a space from the minimal neighbourhood of each point. The
    /// neighbourhoods must describe a preorder: `x ∈ N(x)` and
    /// `y ∈ N(x) ⇒ N(y) ⊆ N(x)`.
    pub fn from_neighborhoods(nbhd: Vec<Subset>) -> Result<Self> {
        let size = nbhd.len();
        check_ground(size)?;
        for (x, &n) in nbhd.iter().enumerate() {
            if !n.contains(x) || !n.within(size) {
                return Err(TopoError::Invalid(format!(
                    "neighbourhood {n} of point {x} is not a valid minimal neighbourhood"
                )));
            }
            if let Some(y) = n.points().find(|&y| !nbhd[y].is_subset_of(n)) {
                return Err(TopoError::Invalid(format!(
                    "neighbourhoods are not transitive at points {x}, {y}"
                )));
            }
        }
        Ok(Self::from_nbhd_unchecked(nbhd))
    }

    pub(crate) fn from_nbhd_unchecked(nbhd: Vec<Subset>) -> Self {
        FinSpace {
            size: nbhd.len(),
            nbhd,
            labels: None,
            opens: OnceLock::new(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(TopoError::Invalid(format!(
                "{} labels for {} points",
                labels.len(),
                self.size
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// The empty space.
    pub fn empty() -> Self {
        Self::from_nbhd_unchecked(Vec::new())
    }

    pub fn point() -> Self {
        Self::discrete(1)
    }

    pub fn discrete(n: usize) -> Self {
        assert!(n <= MAX_POINTS);
        Self::from_nbhd_unchecked((0..n).map(Subset::singleton).collect())
    }

    pub fn indiscrete(n: usize) -> Self {
        assert!(n <= MAX_POINTS);
        Self::from_nbhd_unchecked(vec![Subset::full(n); n])
    }

    /// The Sierpiński space: points `{0, 1}` with `{1}` the only proper
    /// nonempty open set.
    pub fn sierpinski() -> Self {
        Self::from_nbhd_unchecked(vec![Subset::full(2), Subset::singleton(1)])
    }

    /// Two points with opens `∅ ⊂ {0} ⊂ {0,1}`.
    pub fn chain2() -> Self {
        Self::from_nbhd_unchecked(vec![Subset::singleton(0), Subset::full(2)])
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.size)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The smallest open set containing `x`.
    pub fn min_nbhd(&self, x: usize) -> Subset {
        self.nbhd[x]
    }

    pub fn neighborhoods(&self) -> &[Subset] {
        &self.nbhd
    }

    /// Specialisation preorder: `x ≤ y` iff every open set containing `x`
    /// also contains `y`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.nbhd[x].contains(y)
    }

    pub fn is_open(&self, s: Subset) -> bool {
        s.within(self.size) && s.points().all(|x| self.nbhd[x].is_subset_of(s))
    }

    pub fn is_closed(&self, s: Subset) -> bool {
        s.within(self.size) && self.is_open(s.complement(self.size))
    }

    /// The smallest open set containing `s`.
    pub fn up_closure(&self, s: Subset) -> Subset {
        s.points().fold(Subset::EMPTY, |acc, x| acc | self.nbhd[x])
    }

    /// The family of open sets in canonical order.
    pub fn opens(&self) -> &SubsetFamily {
        self.opens.get_or_init(|| {
            SubsetFamily::from_sorted(self.size, alexandrov_opens(self.size, &self.nbhd))
        })
    }

    /// Closed sets in canonical order.
    pub fn closed_sets(&self) -> Vec<Subset> {
        let mut closed: Vec<Subset> = self
            .opens()
            .iter()
            .map(|u| u.complement(self.size))
            .collect();
        closed.sort_unstable();
        closed
    }

    pub fn is_discrete(&self) -> bool {
        self.nbhd
            .iter()
            .enumerate()
            .all(|(x, n)| *n == Subset::singleton(x))
    }

    pub fn is_indiscrete(&self) -> bool {
        self.nbhd.iter().all(|n| *n == self.full())
    }

    /// Relabels points: point `x` of `self` becomes point `perm[x]`.
    pub fn permuted(&self, perm: &[usize]) -> FinSpace {
        let map = |s: Subset| Subset::from_points(s.points().map(|p| perm[p]));
        let mut nbhd = vec![Subset::EMPTY; self.size];
        for x in 0..self.size {
            nbhd[perm[x]] = map(self.nbhd[x]);
        }
        FinSpace::from_nbhd_unchecked(nbhd)
    }
}

impl PartialEq for FinSpace {
    /// Two spaces are equal when they carry the same topology on the same
    /// ground; labels are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.nbhd == other.nbhd
    }
}

impl Eq for FinSpace {}

impl std::hash::Hash for FinSpace {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.size.hash(state);
        self.nbhd.hash(state);
    }
}

impl fmt::Debug for FinSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinSpace")
            .field("size", &self.size)
            .field("nbhd", &self.nbhd)
            .finish()
    }
}

fn check_ground(size: usize) -> Result<()> {
    if size > MAX_POINTS {
        Err(TopoError::GroundTooLarge {
            size,
            max: MAX_POINTS,
        })
    } else {
        Ok(())
    }
}

/// Validates a family of open sets and returns the space it defines.
pub fn make_space(size: usize, opens: &SubsetFamily) -> Result<FinSpace> {
    check_ground(size)?;
    if opens.ground_size() != size {
        return Err(TopoError::Invalid(format!(
            "family over {} points used for a space of {size} points",
            opens.ground_size()
        )));
    }
    let nbhd = validate_topology(size, opens).map_err(TopoError::NotATopology)?;
    let space = FinSpace::from_nbhd_unchecked(nbhd);
    let _ = space.opens.set(opens.clone());
    Ok(space)
}

/// Checks the topology axioms on an explicit family and returns the minimal
/// neighbourhoods on success.
///
/// With `N(x)` the intersection of the members containing `x`, the family is
/// closed under finite unions and intersections exactly when it contains `∅`
/// and every `N(x)`, and `U ∪ N(x)` stays in the family for every member `U`.
pub(crate) fn validate_topology(
    size: usize,
    opens: &SubsetFamily,
) -> std::result::Result<Vec<Subset>, AxiomViolation> {
    if !opens.contains(Subset::EMPTY) {
        return Err(AxiomViolation::MissingEmpty);
    }
    let full = Subset::full(size);
    if !opens.contains(full) {
        return Err(AxiomViolation::MissingFull);
    }
    let mut nbhd = Vec::with_capacity(size);
    for x in 0..size {
        let mut acc = full;
        for &u in opens.iter().filter(|u| u.contains(x)) {
            let next = acc & u;
            if !opens.contains(next) {
                return Err(AxiomViolation::Intersection(acc, u));
            }
            acc = next;
        }
        nbhd.push(acc);
    }
    for &u in opens.iter() {
        for x in (full - u).points() {
            if !opens.contains(u | nbhd[x]) {
                return Err(AxiomViolation::Union(u, nbhd[x]));
            }
        }
    }
    Ok(nbhd)
}

/// Smallest topology containing every member of `family`. The empty
/// subbasis generates the indiscrete topology.
pub fn generate_from_subbasis(size: usize, family: &SubsetFamily) -> Result<FinSpace> {
    check_ground(size)?;
    if family.ground_size() > size {
        return Err(TopoError::Invalid(format!(
            "subbasis over {} points used for a space of {size} points",
            family.ground_size()
        )));
    }
    Ok(from_subbasis_iter(size, family.iter().copied()))
}

/// Generates a topology from any iterator of subsets of `0..size`.
pub(crate) fn from_subbasis_iter<I: IntoIterator<Item = Subset>>(
    size: usize,
    family: I,
) -> FinSpace {
    let full = Subset::full(size);
    let mut nbhd = vec![full; size];
    for s in family {
        let s = s & full;
        for x in s.points() {
            nbhd[x] = nbhd[x] & s;
        }
    }
    FinSpace::from_nbhd_unchecked(nbhd)
}

/// All unions of minimal neighbourhoods, sorted.
fn alexandrov_opens(size: usize, nbhd: &[Subset]) -> Vec<Subset> {
    let full = Subset::full(size);
    let mut seen: HashSet<Subset> = HashSet::new();
    seen.insert(Subset::EMPTY);
    let mut stack = vec![Subset::EMPTY];
    while let Some(u) = stack.pop() {
        for x in (full - u).points() {
            let next = u | nbhd[x];
            if seen.insert(next) {
                stack.push(next);
            }
        }
    }
    let mut out: Vec<Subset> = seen.into_iter().collect();
    out.sort_unstable();
    out
}
