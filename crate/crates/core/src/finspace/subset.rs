use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use crate::error::{Result, TopoError};

/// Largest ground set a [`Subset`] can describe.
pub const MAX_POINTS: usize = 32;

/// A subset of a ground set `{0, .., n-1}` with `n <= 32`, stored as its
/// characteristic bit-vector. The canonical order on subsets is the numeric
/// order of the bit-vector.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// The full ground set on `n` points.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_POINTS);
        if n >= 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub fn singleton(point: usize) -> Self {
        debug_assert!(point < MAX_POINTS);
        Subset(1 << point)
    }

    pub fn from_points<I: IntoIterator<Item = usize>>(points: I) -> Self {
        points
            .into_iter()
            .fold(Subset::EMPTY, |acc, p| acc | Subset::singleton(p))
    }

    /// Like [`Subset::from_points`], but rejects points outside `0..ground`.
    pub fn try_from_points(points: &[usize], ground: usize) -> Result<Self> {
        let mut s = Subset::EMPTY;
        for &p in points {
            if p >= ground || p >= MAX_POINTS {
                return Err(TopoError::Invalid(format!(
                    "point {p} outside ground of {ground} points"
                )));
            }
            s = s | Subset::singleton(p);
        }
        Ok(s)
    }

    pub fn contains(self, point: usize) -> bool {
        point < MAX_POINTS && self.0 & (1 << point) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    /// True if no bit at or above `n` is set.
    pub fn within(self, n: usize) -> bool {
        self.is_subset_of(Subset::full(n))
    }

    pub fn complement(self, n: usize) -> Self {
        Subset(!self.0) & Subset::full(n)
    }

    pub fn with(self, point: usize) -> Self {
        self | Subset::singleton(point)
    }

    pub fn without(self, point: usize) -> Self {
        self - Subset::singleton(point)
    }

    /// Points in ascending order.
    pub fn points(self) -> Points {
        Points(self.0)
    }

    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.points().collect()
    }

    /// All subsets of the ground set `{0, .., n-1}` in canonical order.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        assert!(n < MAX_POINTS, "cannot enumerate all subsets of {n} points");
        (0u32..(1u32 << n)).map(Subset)
    }

    /// All subsets of `self` in canonical order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let mask = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur.wrapping_sub(mask)) & mask)
            };
            Some(Subset(cur))
        })
    }
}

pub struct Points(u32);

impl Iterator for Points {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let p = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Points {}

impl BitOr for Subset {
    type Output = Subset;
    fn bitor(self, rhs: Subset) -> Subset {
        Subset(self.0 | rhs.0)
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    fn bitand(self, rhs: Subset) -> Subset {
        Subset(self.0 & rhs.0)
    }
}

impl Sub for Subset {
    type Output = Subset;
    fn sub(self, rhs: Subset) -> Subset {
        Subset(self.0 & !rhs.0)
    }
}

impl Not for Subset {
    type Output = Subset;
    fn not(self) -> Subset {
        Subset(!self.0)
    }
}

impl serde::Serialize for Subset {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.points())
    }
}

impl<'de> serde::Deserialize<'de> for Subset {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let points = Vec::<usize>::deserialize(deserializer)?;
        Subset::try_from_points(&points, MAX_POINTS).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.points().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A duplicate-free family of subsets of a common ground set, kept in
/// canonical (numeric) order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubsetFamily {
    ground_size: usize,
    members: Vec<Subset>,
}

impl SubsetFamily {
    pub fn new<I: IntoIterator<Item = Subset>>(ground_size: usize, members: I) -> Result<Self> {
        if ground_size > MAX_POINTS {
            return Err(TopoError::GroundTooLarge {
                size: ground_size,
                max: MAX_POINTS,
            });
        }
        let mut members: Vec<Subset> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|s| !s.within(ground_size)) {
            return Err(TopoError::OutOfGround {
                subset: *bad,
                ground: ground_size,
            });
        }
        members.sort_unstable();
        members.dedup();
        Ok(SubsetFamily {
            ground_size,
            members,
        })
    }

    /// Builds a family from members already known to be sorted, unique and
    /// within the ground.
    pub(crate) fn from_sorted(ground_size: usize, members: Vec<Subset>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|s| s.within(ground_size)));
        SubsetFamily {
            ground_size,
            members,
        }
    }

    pub fn empty(ground_size: usize) -> Self {
        SubsetFamily {
            ground_size,
            members: Vec::new(),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subset> {
        self.members.iter()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    pub fn index_of(&self, s: Subset) -> Option<usize> {
        self.members.binary_search(&s).ok()
    }

    pub fn is_subfamily_of(&self, other: &SubsetFamily) -> bool {
        self.members.iter().all(|s| other.contains(*s))
    }

    /// Members of `self` missing from `other`.
    pub fn difference(&self, other: &SubsetFamily) -> Vec<Subset> {
        self.members
            .iter()
            .copied()
            .filter(|s| !other.contains(*s))
            .collect()
    }

    pub fn into_members(self) -> Vec<Subset> {
        self.members
    }
}

impl<'a> IntoIterator for &'a SubsetFamily {
    type Item = &'a Subset;
    type IntoIter = std::slice::Iter<'a, Subset>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}
