//! Separation axioms, compactness, boundedness and the local properties
//! built on them.
//!
//! Compactness and boundedness come in two flavours. The literal checkers
//! walk every open cover and extract a finite subcover; on a finite space
//! they always succeed, which is a theorem the test-suite witnesses rather
//! than an assumption baked into the code. The `_finite` shortcuts return
//! that known answer directly. [`compact_check`] and [`local_profile_with`]
//! pick the literal route when the cover enumeration fits the budget and
//! record which route produced the answer.

use serde::Serialize;

use super::{closure_of, subspace, FinSpace, Subset};
use crate::error::{Result, TopoError};

/// Largest number of open sets whose covers are enumerated literally.
pub const DEFAULT_COVER_BUDGET: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Decided by enumerating open covers.
    Literal,
    /// Decided by the finite-space collapse (every subset is compact and
    /// bounded).
    FiniteShortcut,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Checked<T> {
    pub value: T,
    pub provenance: Provenance,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Separation {
    pub t0: bool,
    pub t1: bool,
    pub t2: bool,
    pub regular: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LocalProfile {
    #[serde(flatten)]
    pub separation: Separation,
    pub locally_compact: bool,
    pub locally_bounded: bool,
    pub corecompact: bool,
    pub provenance: Provenance,
}

fn check_within(x: &FinSpace, s: Subset) -> Result<()> {
    if s.within(x.size()) {
        Ok(())
    } else {
        Err(TopoError::OutOfGround {
            subset: s,
            ground: x.size(),
        })
    }
}

pub fn separation_profile(x: &FinSpace) -> Separation {
    let n = x.size();
    let pairs = || (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)));
    let t0 = pairs().all(|(a, b)| !(x.leq(a, b) && x.leq(b, a)));
    let t1 = (0..n).all(|p| {
        closure_of(x, Subset::singleton(p)).expect("point in ground") == Subset::singleton(p)
    });
    let t2 = pairs().all(|(a, b)| !x.min_nbhd(a).intersects(x.min_nbhd(b)));
    // Every closed set missing p lies inside the complement of N(p), so that
    // complement is the hardest set to separate from p, and N(p) together
    // with the smallest open set around it are the best candidates.
    let regular = (0..n).all(|p| {
        let far = x.min_nbhd(p).complement(n);
        !x.min_nbhd(p).intersects(x.up_closure(far))
    });
    Separation {
        t0,
        t1,
        t2,
        regular,
    }
}

/// Irredundant subcover of `target` drawn from `cover`, if `cover` covers it.
fn finite_subcover(cover: &[Subset], target: Subset) -> Option<Vec<Subset>> {
    let union = cover.iter().fold(Subset::EMPTY, |a, &b| a | b);
    if !target.is_subset_of(union) {
        return None;
    }
    let mut kept: Vec<Subset> = cover.to_vec();
    let mut i = 0;
    while i < kept.len() {
        let rest = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .fold(Subset::EMPTY, |a, (_, &b)| a | b);
        if target.is_subset_of(rest) {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    Some(kept)
}

/// For every subfamily of `opens` accepted by `is_cover`, checks that a
/// finite subfamily of it covers `target`.
fn every_cover_reduces(
    opens: &[Subset],
    budget: usize,
    is_cover: impl Fn(Subset) -> bool,
    target: Subset,
) -> Result<bool> {
    if opens.len() > budget {
        return Err(TopoError::CoverEnumerationBudgetExceeded {
            opens: opens.len(),
            max: budget,
        });
    }
    let mut members = Vec::with_capacity(opens.len());
    for mask in 0u32..(1u32 << opens.len()) {
        members.clear();
        members.extend(Subset::from_bits(mask).points().map(|i| opens[i]));
        let union = members.iter().fold(Subset::EMPTY, |a, &b| a | b);
        if !is_cover(union) {
            continue;
        }
        if finite_subcover(&members, target).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Literal compactness: every open cover of `k` has a finite subcover.
pub fn is_compact_subset(x: &FinSpace, k: Subset) -> Result<bool> {
    compact_literal(x, k, DEFAULT_COVER_BUDGET)
}

fn compact_literal(x: &FinSpace, k: Subset, budget: usize) -> Result<bool> {
    check_within(x, k)?;
    every_cover_reduces(x.opens().members(), budget, |u| k.is_subset_of(u), k)
}

/// Finite-space shortcut: every subset of a finite space is compact.
pub fn is_compact_subset_finite(x: &FinSpace, k: Subset) -> bool {
    debug_assert!(k.within(x.size()));
    true
}

/// Compactness through the literal checker when the cover enumeration fits
/// `budget`, otherwise through the finite shortcut.
pub fn compact_check(x: &FinSpace, k: Subset, budget: usize) -> Result<Checked<bool>> {
    match compact_literal(x, k, budget) {
        Ok(value) => Ok(Checked {
            value,
            provenance: Provenance::Literal,
        }),
        Err(TopoError::CoverEnumerationBudgetExceeded { .. }) => Ok(Checked {
            value: is_compact_subset_finite(x, k),
            provenance: Provenance::FiniteShortcut,
        }),
        Err(e) => Err(e),
    }
}

/// Literal boundedness: every open cover of the whole space has a finite
/// subfamily covering `b`.
pub fn is_bounded_in(x: &FinSpace, b: Subset) -> Result<bool> {
    bounded_literal(x, b, DEFAULT_COVER_BUDGET)
}

fn bounded_literal(x: &FinSpace, b: Subset, budget: usize) -> Result<bool> {
    check_within(x, b)?;
    let full = x.full();
    every_cover_reduces(x.opens().members(), budget, |u| u == full, b)
}

/// Boundedness through the literal checker when the cover enumeration fits
/// `budget`, otherwise through the finite shortcut.
pub fn bounded_check(x: &FinSpace, b: Subset, budget: usize) -> Result<Checked<bool>> {
    match bounded_literal(x, b, budget) {
        Ok(value) => Ok(Checked {
            value,
            provenance: Provenance::Literal,
        }),
        Err(TopoError::CoverEnumerationBudgetExceeded { .. }) => Ok(Checked {
            value: is_bounded_in_finite(x, b),
            provenance: Provenance::FiniteShortcut,
        }),
        Err(e) => Err(e),
    }
}

pub fn is_bounded_in_finite(x: &FinSpace, b: Subset) -> bool {
    debug_assert!(b.within(x.size()));
    true
}

pub fn local_profile(x: &FinSpace) -> LocalProfile {
    local_profile_with(x, DEFAULT_COVER_BUDGET)
}

/// Separation flags plus local compactness, local boundedness and
/// corecompactness, each evaluated from its definition.
pub fn local_profile_with(x: &FinSpace, budget: usize) -> LocalProfile {
    let separation = separation_profile(x);
    match local_literal(x, budget) {
        Ok((locally_compact, locally_bounded, corecompact)) => LocalProfile {
            separation,
            locally_compact,
            locally_bounded,
            corecompact,
            provenance: Provenance::Literal,
        },
        Err(_) => LocalProfile {
            separation,
            locally_compact: local_shortcut(x, |_, _| true),
            locally_bounded: local_shortcut(x, |_, _| true),
            corecompact: local_shortcut(x, |_, _| true),
            provenance: Provenance::FiniteShortcut,
        },
    }
}

/// For every point `p` and open `U ∋ p`, is there an open `V` with
/// `p ∈ V ⊆ U` accepted by `good(V, U)`?
fn local_shortcut(x: &FinSpace, good: impl Fn(Subset, Subset) -> bool) -> bool {
    (0..x.size()).all(|p| {
        x.opens().iter().filter(|u| u.contains(p)).all(|&u| {
            x.opens()
                .iter()
                .any(|&v| v.contains(p) && v.is_subset_of(u) && good(v, u))
        })
    })
}

fn local_literal(x: &FinSpace, budget: usize) -> Result<(bool, bool, bool)> {
    if x.opens().len() > budget {
        return Err(TopoError::CoverEnumerationBudgetExceeded {
            opens: x.opens().len(),
            max: budget,
        });
    }
    let opens = x.opens().members();
    let mut locally_compact = true;
    let mut locally_bounded = true;
    let mut corecompact = true;
    for p in 0..x.size() {
        for &u in opens.iter().filter(|u| u.contains(p)) {
            let inside: Vec<Subset> = opens
                .iter()
                .copied()
                .filter(|v| v.contains(p) && v.is_subset_of(u))
                .collect();

            let mut found = false;
            'v: for &v in &inside {
                for extra in (u - v).subsets() {
                    if compact_literal(x, v | extra, budget)? {
                        found = true;
                        break 'v;
                    }
                }
            }
            locally_compact &= found;

            let mut found = false;
            for &v in &inside {
                if bounded_literal(x, v, budget)? {
                    found = true;
                    break;
                }
            }
            locally_bounded &= found;

            let sub = subspace(x, u)?;
            let points = u.to_vec();
            let mut found = false;
            for &v in &inside {
                let local = Subset::from_points(
                    points
                        .iter()
                        .enumerate()
                        .filter(|(_, &q)| v.contains(q))
                        .map(|(i, _)| i),
                );
                if bounded_literal(&sub, local, budget)? {
                    found = true;
                    break;
                }
            }
            corecompact &= found;
        }
    }
    Ok((locally_compact, locally_bounded, corecompact))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separation_examples() {
        let s = separation_profile(&FinSpace::sierpinski());
        assert_eq!(
            s,
            Separation {
                t0: true,
                t1: false,
                t2: false,
                regular: false
            }
        );
        let d = separation_profile(&FinSpace::discrete(2));
        assert!(d.t0 && d.t1 && d.t2 && d.regular);
        let i = separation_profile(&FinSpace::indiscrete(2));
        assert!(!i.t0 && i.regular);
    }

    #[test]
    fn compactness_examples() {
        let s = FinSpace::sierpinski();
        assert!(is_compact_subset(&s, Subset::full(2)).unwrap());
        assert!(is_compact_subset(&s, Subset::EMPTY).unwrap());
        assert!(is_compact_subset(&FinSpace::discrete(3), Subset::full(3)).unwrap());
        assert!(is_compact_subset(&s, Subset::singleton(3)).is_err());
    }

    #[test]
    fn boundedness_examples() {
        assert!(is_bounded_in(&FinSpace::sierpinski(), Subset::singleton(0)).unwrap());
        assert!(is_bounded_in(&FinSpace::indiscrete(2), Subset::full(2)).unwrap());
        assert!(is_bounded_in(&FinSpace::discrete(3), Subset::from_points([0, 2])).unwrap());
    }

    #[test]
    fn cover_budget_is_enforced() {
        let d = FinSpace::discrete(5);
        let err = is_compact_subset(&d, Subset::full(5)).unwrap_err();
        assert!(matches!(
            err,
            TopoError::CoverEnumerationBudgetExceeded { opens: 32, .. }
        ));
        let checked = compact_check(&d, Subset::full(5), DEFAULT_COVER_BUDGET).unwrap();
        assert_eq!(checked.provenance, Provenance::FiniteShortcut);
        assert!(checked.value);
        let checked = compact_check(&FinSpace::sierpinski(), Subset::full(2), 16).unwrap();
        assert_eq!(checked.provenance, Provenance::Literal);
    }

    #[test]
    fn local_profile_examples() {
        for x in [FinSpace::sierpinski(), FinSpace::indiscrete(2)] {
            let p = local_profile(&x);
            assert_eq!(p.provenance, Provenance::Literal);
            assert!(p.locally_compact && p.locally_bounded && p.corecompact);
        }
        let big = local_profile(&FinSpace::discrete(5));
        assert_eq!(big.provenance, Provenance::FiniteShortcut);
    }
}
