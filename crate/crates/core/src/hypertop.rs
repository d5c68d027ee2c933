//! Topologies on the lattice `O(Y)` of open sets: Scott, strong Scott,
//! `Z`-Scott, strong `Z`-Scott and the topology generated by the sets
//! `⟨K⟩ = {U : K ⊆ U}`.
//!
//! A hyperspace is an ordinary [`FinSpace`] whose point `i` is the open set
//! `ground[i]`. The four Scott-type topologies are obtained by running every
//! candidate family of opens through the literal conditions (α) and (β);
//! the result is then checked against the topology axioms rather than
//! assumed to satisfy them.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Result, TopoError};
use crate::finspace::{compact_check, from_subbasis_iter, FinSpace, Subset, SubsetFamily};
use crate::mapspace::ZContext;
use crate::par::{self, Execution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HyperKind {
    #[serde(rename = "scott")]
    Scott,
    #[serde(rename = "sscott")]
    StrongScott,
    #[serde(rename = "zscott")]
    ZScott,
    #[serde(rename = "zsscott")]
    StrongZScott,
    #[serde(rename = "ksubbasis")]
    CompactSubbasis,
    #[serde(rename = "custom")]
    Custom,
}

impl HyperKind {
    fn name(self) -> &'static str {
        match self {
            HyperKind::Scott => "scott",
            HyperKind::StrongScott => "strong scott",
            HyperKind::ZScott => "Z-scott",
            HyperKind::StrongZScott => "strong Z-scott",
            HyperKind::CompactSubbasis => "compact subbasis",
            HyperKind::Custom => "custom",
        }
    }
}

/// A topology on `O(Y)`.
#[derive(Clone, Debug)]
pub struct HyperSpace {
    base: FinSpace,
    ground: Vec<Subset>,
    space: FinSpace,
    kind: HyperKind,
}

impl PartialEq for HyperSpace {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.space == other.space
    }
}

impl HyperSpace {
    /// Wraps an explicit family of opens over the ground `O(base)`.
    pub fn from_opens(base: FinSpace, opens: &SubsetFamily) -> Result<Self> {
        let ground = ground_of(&base, usize::MAX)?;
        if opens.ground_size() > ground.len() {
            return Err(TopoError::MismatchedGround);
        }
        let space = crate::finspace::make_space(ground.len(), opens)?;
        Ok(HyperSpace {
            base,
            ground,
            space,
            kind: HyperKind::Custom,
        })
    }

    pub fn base(&self) -> &FinSpace {
        &self.base
    }

    pub fn ground(&self) -> &[Subset] {
        &self.ground
    }

    pub fn space(&self) -> &FinSpace {
        &self.space
    }

    pub fn opens(&self) -> &SubsetFamily {
        self.space.opens()
    }

    pub fn kind(&self) -> HyperKind {
        self.kind
    }

    pub fn ground_index(&self, u: Subset) -> Option<usize> {
        self.ground.binary_search(&u).ok()
    }

    /// The family of opens of `Y` selected by a mask over the ground.
    pub fn decode(&self, mask: Subset) -> Vec<Subset> {
        mask.points().map(|i| self.ground[i]).collect()
    }

    /// Mask over the ground for a family of opens of `Y`.
    pub fn encode(&self, family: &[Subset]) -> Result<Subset> {
        family
            .iter()
            .map(|&u| self.ground_index(u).ok_or(TopoError::NotOpen(u)))
            .collect::<Result<Vec<_>>>()
            .map(Subset::from_points)
    }

    pub fn is_open_family(&self, family: &[Subset]) -> Result<bool> {
        Ok(self.space.is_open(self.encode(family)?))
    }
}

fn ground_of(y: &FinSpace, max: usize) -> Result<Vec<Subset>> {
    let opens = y.opens();
    if opens.len() > max {
        return Err(TopoError::GroundTooLarge {
            size: opens.len(),
            max,
        });
    }
    Ok(opens.members().to_vec())
}

/// Condition (α), applied to members of `H` inside `alpha_mask`.
/// Condition (β) as a list of constraints: whenever the trigger open is in
/// `H` (or always, for a cover condition) some open from the witness mask
/// must be in `H`.
struct Filtration {
    up: Vec<u32>,
    alpha_mask: u32,
    constraints: Vec<(Option<usize>, u32)>,
}

impl Filtration {
    fn qualifies(&self, h: u32) -> bool {
        let mut alpha = h & self.alpha_mask;
        while alpha != 0 {
            let i = alpha.trailing_zeros() as usize;
            if self.up[i] & !h != 0 {
                return false;
            }
            alpha &= alpha - 1;
        }
        self.constraints.iter().all(|&(trigger, witness)| {
            let triggered = trigger.is_none_or(|t| h & (1 << t) != 0);
            !triggered || h & witness != 0
        })
    }
}

/// Which open sets may appear in a (β) collection and whether the
/// collections are covers of `Y` or arbitrary.
#[derive(Clone, Copy)]
struct Beta {
    allowed: u32,
    covers_only: bool,
}

fn beta_constraints(ground: &[Subset], full: usize, beta: Beta) -> Vec<(Option<usize>, u32)> {
    let k = ground.len();
    let index = |s: Subset| ground.binary_search(&s).expect("unions of opens are open");
    let join: Vec<Vec<usize>> = (0..k)
        .map(|i| (0..k).map(|j| index(ground[i] | ground[j])).collect())
        .collect();
    // For every nonempty collection `c` of allowed opens: the index of its
    // union, and the mask of unions of its nonempty subcollections.
    let size = 1usize << k;
    let mut union = vec![0usize; size];
    let mut reach = vec![0u32; size];
    let mut raw: Vec<(Option<usize>, u32)> = Vec::new();
    let allowed = beta.allowed;
    let mut c = allowed;
    let mut collections = Vec::new();
    while c != 0 {
        collections.push(c);
        c = (c - 1) & allowed;
    }
    collections.reverse();
    for c in collections {
        let low = c & c.wrapping_neg();
        let i = low.trailing_zeros() as usize;
        let rest = c ^ low;
        if rest == 0 {
            union[c as usize] = i;
            reach[c as usize] = low;
        } else {
            let prev = reach[rest as usize];
            let mut r = prev | low;
            let mut bits = prev;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                r |= 1 << join[j][i];
                bits &= bits - 1;
            }
            union[c as usize] = join[union[rest as usize]][i];
            reach[c as usize] = r;
        }
        let u = union[c as usize];
        if !beta.covers_only {
            raw.push((Some(u), reach[c as usize]));
        } else if u == full {
            raw.push((None, reach[c as usize]));
        }
    }
    minimal_constraints(raw)
}

/// Drops every constraint implied by another with the same trigger and a
/// smaller witness mask.
fn minimal_constraints(mut raw: Vec<(Option<usize>, u32)>) -> Vec<(Option<usize>, u32)> {
    raw.sort_by_key(|&(t, w)| (t, w.count_ones(), w));
    raw.dedup();
    let mut kept: Vec<(Option<usize>, u32)> = Vec::new();
    for (t, w) in raw {
        if !kept.iter().any(|&(t2, w2)| t2 == t && w2 & !w == 0) {
            kept.push((t, w));
        }
    }
    kept
}

fn up_masks(ground: &[Subset]) -> Vec<u32> {
    ground
        .iter()
        .map(|&u| {
            ground
                .iter()
                .enumerate()
                .filter(|(_, v)| u.is_subset_of(**v))
                .fold(0u32, |m, (j, _)| m | (1 << j))
        })
        .collect()
}

/// Runs the filtration for one of the four Scott-type kinds. `o_z` is
/// required for the `Z` variants and ignored otherwise.
pub fn scott_type(
    y: &FinSpace,
    o_z: Option<&SubsetFamily>,
    kind: HyperKind,
    budget: &Budget,
    exec: Execution,
) -> Result<HyperSpace> {
    let ground = ground_of(y, budget.max_hyper_ground.min(MAX_FILTRATION_GROUND))?;
    let k = ground.len();
    let everything = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
    let oz_mask = match o_z {
        Some(f) => f
            .iter()
            .map(|&u| {
                ground
                    .binary_search(&u)
                    .map_err(|_| TopoError::NotOpen(u))
                    .map(|i| 1u32 << i)
            })
            .try_fold(0u32, |m, b| b.map(|b| m | b))?,
        None => everything,
    };
    let full = ground.binary_search(&y.full()).expect("Y is open");
    let (alpha_mask, beta, strong) = match kind {
        HyperKind::Scott => (
            everything,
            Beta {
                allowed: everything,
                covers_only: false,
            },
            false,
        ),
        HyperKind::StrongScott => (
            everything,
            Beta {
                allowed: everything,
                covers_only: true,
            },
            true,
        ),
        HyperKind::ZScott | HyperKind::StrongZScott => {
            if o_z.is_none() {
                return Err(TopoError::Invalid(format!("{} needs O_Z(Y)", kind.name())));
            }
            let strong = kind == HyperKind::StrongZScott;
            (
                oz_mask,
                Beta {
                    allowed: oz_mask,
                    covers_only: strong,
                },
                strong,
            )
        }
        HyperKind::CompactSubbasis | HyperKind::Custom => {
            return Err(TopoError::Invalid(format!(
                "{} is not a Scott-type kind",
                kind.name()
            )))
        }
    };
    let filtration = Filtration {
        up: up_masks(&ground),
        alpha_mask,
        constraints: beta_constraints(&ground, full, beta),
    };
    let mut members: Vec<u64> =
        par::filter_range(exec, 1u64 << k, |h| filtration.qualifies(h as u32));
    if strong && members.first() != Some(&0) {
        members.insert(0, 0);
    }
    let family = SubsetFamily::new(k, members.into_iter().map(|h| Subset::from_bits(h as u32)))?;
    let space = crate::finspace::make_space(k, &family).map_err(|e| match e {
        TopoError::NotATopology(violation) => TopoError::AxiomsViolated {
            construction: kind.name(),
            violation,
        },
        other => other,
    })?;
    if kind == HyperKind::Scott {
        let upsets = FinSpace::from_neighborhoods(
            filtration
                .up
                .iter()
                .map(|&m| Subset::from_bits(m))
                .collect(),
        )?;
        if upsets.opens() != space.opens() {
            return Err(TopoError::CollapseMismatch(
                "scott topology versus up-sets of the open-set lattice",
            ));
        }
    }
    Ok(HyperSpace {
        base: y.clone(),
        ground,
        space,
        kind,
    })
}

/// Hard ceiling for the exhaustive filtration over `2^|O(Y)|` families.
pub const MAX_FILTRATION_GROUND: usize = 20;

pub fn scott(y: &FinSpace) -> Result<HyperSpace> {
    scott_type(
        y,
        None,
        HyperKind::Scott,
        &Budget::default(),
        Execution::default(),
    )
}

/// The empty family of opens is adjoined by fiat: with `Y` nonempty the
/// cover condition excludes it, yet every topology needs it.
pub fn strong_scott(y: &FinSpace) -> Result<HyperSpace> {
    scott_type(
        y,
        None,
        HyperKind::StrongScott,
        &Budget::default(),
        Execution::default(),
    )
}

pub fn z_scott(y: &FinSpace, z: &FinSpace) -> Result<HyperSpace> {
    let ctx = ZContext::new(y, z, &Budget::default())?;
    scott_type(
        y,
        Some(&ctx.o_z),
        HyperKind::ZScott,
        &ctx.budget,
        Execution::default(),
    )
}

pub fn strong_z_scott(y: &FinSpace, z: &FinSpace) -> Result<HyperSpace> {
    let ctx = ZContext::new(y, z, &Budget::default())?;
    scott_type(
        y,
        Some(&ctx.o_z),
        HyperKind::StrongZScott,
        &ctx.budget,
        Execution::default(),
    )
}

/// Topology on `O(Y)` generated by `⟨K⟩ = {U : K ⊆ U}` over compact `K`.
pub fn compact_subbasis_topology(y: &FinSpace) -> Result<HyperSpace> {
    compact_subbasis_topology_with(y, &Budget::default())
}

pub fn compact_subbasis_topology_with(y: &FinSpace, budget: &Budget) -> Result<HyperSpace> {
    let ground = ground_of(y, budget.max_hyper_ground)?;
    let mut subbasis = Vec::new();
    for k in Subset::all(y.size()) {
        if compact_check(y, k, budget.cover_opens)?.value {
            subbasis.push(containing(&ground, k));
        }
    }
    let space = from_subbasis_iter(ground.len(), subbasis);
    Ok(HyperSpace {
        base: y.clone(),
        ground,
        space,
        kind: HyperKind::CompactSubbasis,
    })
}

fn containing(ground: &[Subset], a: Subset) -> Subset {
    Subset::from_points((0..ground.len()).filter(|&i| a.is_subset_of(ground[i])))
}

#[derive(Clone, Copy, Debug)]
pub enum UpMode<'a> {
    /// `{U open : a ⊆ U}`.
    Containment,
    /// `{U open : a ≪ U}` relative to the given `Z`.
    WayBelow(&'a FinSpace),
}

/// The opens of `Y` above `a` in the chosen sense, in canonical order.
pub fn up_family(y: &FinSpace, a: Subset, mode: UpMode<'_>) -> Result<Vec<Subset>> {
    if !a.within(y.size()) {
        return Err(TopoError::OutOfGround {
            subset: a,
            ground: y.size(),
        });
    }
    match mode {
        UpMode::Containment => Ok(y
            .opens()
            .iter()
            .copied()
            .filter(|u| a.is_subset_of(*u))
            .collect()),
        UpMode::WayBelow(z) => {
            let ctx = ZContext::new(y, z, &Budget::default())?;
            let mut out = Vec::new();
            for &u in y.opens().iter() {
                if ctx.way_below(a, u)?.value {
                    out.push(u);
                }
            }
            Ok(out)
        }
    }
}
