//! Topologies on `C(Y,Z)`: the `(K,U)` family (compact-open and its
//! `Z`-relative form), lifts `(ℍ,U)` of hyperspace topologies (Isbell,
//! strong Isbell, `t₁^Z`, `t₁,ₛ^Z`) and comparison between topologies.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Result, TopoError};
use crate::finspace::{
    compact_check, from_subbasis_iter, make_space, FinSpace, Subset, SubsetFamily, MAX_POINTS,
};
use crate::hypertop::{scott_type, HyperKind, HyperSpace};
use crate::mapspace::{MapSet, ZContext};
use crate::par::Execution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FnKind {
    /// Compact-open topology `t_co`.
    #[serde(rename = "co")]
    Co,
    /// `Z`-compact-open topology `t_co^Z`.
    #[serde(rename = "coZ")]
    CoZ,
    /// Isbell topology `t_Is`.
    #[serde(rename = "isbell")]
    Isbell,
    /// Strong Isbell topology `t_sIs`.
    #[serde(rename = "sisbell")]
    StrongIsbell,
    /// Lift of the `Z`-Scott topology.
    #[serde(rename = "t1z")]
    T1Z,
    /// Lift of the strong `Z`-Scott topology.
    #[serde(rename = "t1sz")]
    T1SZ,
    #[serde(rename = "custom")]
    Custom,
}

impl FnKind {
    pub const NAMED: [FnKind; 6] = [
        FnKind::Co,
        FnKind::CoZ,
        FnKind::Isbell,
        FnKind::StrongIsbell,
        FnKind::T1Z,
        FnKind::T1SZ,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FnKind::Co => "co",
            FnKind::CoZ => "coZ",
            FnKind::Isbell => "isbell",
            FnKind::StrongIsbell => "sisbell",
            FnKind::T1Z => "t1z",
            FnKind::T1SZ => "t1sz",
            FnKind::Custom => "custom",
        }
    }

    /// The hyperspace topology whose lift this is, if any.
    pub fn hyper_kind(self) -> Option<HyperKind> {
        match self {
            FnKind::Isbell => Some(HyperKind::Scott),
            FnKind::StrongIsbell => Some(HyperKind::StrongScott),
            FnKind::T1Z => Some(HyperKind::ZScott),
            FnKind::T1SZ => Some(HyperKind::StrongZScott),
            _ => None,
        }
    }
}

impl std::str::FromStr for FnKind {
    type Err = TopoError;

    fn from_str(s: &str) -> Result<Self> {
        FnKind::NAMED
            .iter()
            .chain([FnKind::Custom].iter())
            .copied()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| TopoError::Invalid(format!("unknown function-space topology {s:?}")))
    }
}

impl std::fmt::Display for FnKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A topology on `C(Y,Z)`: a [`FinSpace`] whose point `i` is map `i` of
/// the underlying [`MapSet`].
#[derive(Clone, Debug)]
pub struct FnTopology {
    maps: Arc<MapSet>,
    space: FinSpace,
    kind: FnKind,
    note: Option<String>,
}

fn check_map_count(maps: &MapSet) -> Result<()> {
    if maps.len() > MAX_POINTS {
        return Err(TopoError::GroundTooLarge {
            size: maps.len(),
            max: MAX_POINTS,
        });
    }
    Ok(())
}

impl FnTopology {
    pub fn from_space(maps: Arc<MapSet>, space: FinSpace, kind: FnKind) -> Result<Self> {
        if space.size() != maps.len() {
            return Err(TopoError::MismatchedGround);
        }
        Ok(FnTopology {
            maps,
            space,
            kind,
            note: None,
        })
    }

    pub fn from_opens(maps: Arc<MapSet>, opens: &SubsetFamily) -> Result<Self> {
        check_map_count(&maps)?;
        let space = make_space(maps.len(), opens)?;
        FnTopology::from_space(maps, space, FnKind::Custom)
    }

    pub fn discrete(maps: Arc<MapSet>) -> Result<Self> {
        check_map_count(&maps)?;
        let space = FinSpace::discrete(maps.len());
        FnTopology::from_space(maps, space, FnKind::Custom)
    }

    pub fn indiscrete(maps: Arc<MapSet>) -> Result<Self> {
        check_map_count(&maps)?;
        let space = FinSpace::indiscrete(maps.len());
        FnTopology::from_space(maps, space, FnKind::Custom)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn maps(&self) -> &Arc<MapSet> {
        &self.maps
    }

    pub fn y(&self) -> &FinSpace {
        self.maps.domain()
    }

    pub fn z(&self) -> &FinSpace {
        self.maps.codomain()
    }

    pub fn space(&self) -> &FinSpace {
        &self.space
    }

    pub fn opens(&self) -> &SubsetFamily {
        self.space.opens()
    }

    pub fn kind(&self) -> FnKind {
        self.kind
    }

    pub fn note(&self) -> Option<&str> {
        self.note.as_deref()
    }

    pub fn min_nbhd(&self, f: usize) -> Subset {
        self.space.min_nbhd(f)
    }

    pub fn is_open(&self, s: Subset) -> bool {
        self.space.is_open(s)
    }

    /// Mask of the maps whose tables are listed.
    pub fn select(&self, tables: &[&[usize]]) -> Option<Subset> {
        tables
            .iter()
            .map(|t| self.maps.index_of(t))
            .collect::<Option<Vec<_>>>()
            .map(Subset::from_points)
    }
}

fn same_maps(a: &MapSet, b: &MapSet) -> bool {
    a.domain() == b.domain() && a.codomain() == b.codomain() && a.len() == b.len()
}

/// Index into the hyperspace ground of `f⁻¹(U)`, for every map and every
/// open `U` of `Z` (in canonical order).
fn preimage_indices(h: &HyperSpace, maps: &MapSet) -> Vec<Vec<usize>> {
    maps.iter()
        .map(|f| {
            maps.codomain()
                .opens()
                .iter()
                .map(|&u| {
                    h.ground_index(f.preimage(u))
                        .expect("preimages of opens are open")
                })
                .collect()
        })
        .collect()
}

/// Topology on `C(Y,Z)` with subbasis `(ℍ,U) = {f : f⁻¹(U) ∈ ℍ}` over the
/// opens `ℍ` of `h` and the opens `U` of `Z`.
pub fn lift_open_family(h: &HyperSpace, maps: &Arc<MapSet>) -> Result<FnTopology> {
    if h.base() != maps.domain().as_ref() {
        return Err(TopoError::MismatchedBase(
            "hyperspace base differs from the domain of the maps".into(),
        ));
    }
    check_map_count(maps)?;
    let pre = preimage_indices(h, maps);
    let z_opens = maps.codomain().opens().len();
    // `ℍ ↦ (ℍ,U)` preserves unions, so the minimal neighbourhoods of the
    // hyperspace already generate every `(ℍ,U)`; the empty family gives ∅.
    let subbasis = h.space().neighborhoods().iter().flat_map(|&nh| {
        let pre = &pre;
        (0..z_opens)
            .map(move |u| Subset::from_points((0..pre.len()).filter(|&f| nh.contains(pre[f][u]))))
    });
    let space = from_subbasis_iter(maps.len(), subbasis.collect::<Vec<_>>());
    let kind = match h.kind() {
        HyperKind::Scott => FnKind::Isbell,
        HyperKind::StrongScott => FnKind::StrongIsbell,
        HyperKind::ZScott => FnKind::T1Z,
        HyperKind::StrongZScott => FnKind::T1SZ,
        _ => FnKind::Custom,
    };
    FnTopology::from_space(maps.clone(), space, kind)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Compactness {
    /// Compact in `(Y, τ_Y)`.
    Plain,
    /// Compact in `(Y, τ_Y^Z)`.
    ZRelative,
}

/// `(K,U) = {f : f(K) ⊆ U}` with `K` ranging over the compact subsets.
pub fn kset_topology(maps: &Arc<MapSet>, compactness: Compactness) -> Result<FnTopology> {
    let ctx = ZContext::from_maps((**maps).clone(), &Budget::default());
    let mut t = kset_topology_in(&ctx, compactness)?;
    t.maps = maps.clone();
    Ok(t)
}

pub fn kset_topology_in(ctx: &ZContext, compactness: Compactness) -> Result<FnTopology> {
    let maps = &ctx.maps;
    check_map_count(maps)?;
    let y = ctx.y();
    let topology = match compactness {
        Compactness::Plain => y,
        Compactness::ZRelative => &ctx.z_top,
    };
    let mut ks = Vec::new();
    for k in Subset::all(y.size()) {
        if compact_check(topology, k, ctx.budget.cover_opens)?.value {
            ks.push(k);
        }
    }
    let every_subset = ks.len() == 1usize << y.size();
    let z_opens = ctx.z().opens().members();
    let subbasis: Vec<Subset> = ks
        .iter()
        .flat_map(|&k| {
            z_opens.iter().map(move |&u| {
                Subset::from_points(
                    (0..maps.len()).filter(|&f| maps.get(f).image(k).is_subset_of(u)),
                )
            })
        })
        .collect();
    let space = from_subbasis_iter(maps.len(), subbasis);
    let kind = match compactness {
        Compactness::Plain => FnKind::Co,
        Compactness::ZRelative => FnKind::CoZ,
    };
    let t = FnTopology::from_space(maps.clone(), space, kind)?;
    Ok(if every_subset {
        t.with_note(
            "every subset of a finite space is compact in any topology on it, so K ranges \
             over all subsets and the compact-open and Z-compact-open subbases coincide",
        )
    } else {
        t
    })
}

pub fn named_function_topology(kind: FnKind, y: &FinSpace, z: &FinSpace) -> Result<FnTopology> {
    let ctx = ZContext::new(y, z, &Budget::default())?;
    named_in(&ctx, kind, Execution::default())
}

/// Builds a named topology on the maps of an existing context.
pub fn named_in(ctx: &ZContext, kind: FnKind, exec: Execution) -> Result<FnTopology> {
    match kind {
        FnKind::Co => kset_topology_in(ctx, Compactness::Plain),
        FnKind::CoZ => kset_topology_in(ctx, Compactness::ZRelative),
        FnKind::Custom => Err(TopoError::Invalid("custom is not a named topology".into())),
        _ => {
            let hyper = kind.hyper_kind().expect("lifted kinds have a hyperspace");
            let o_z =
                matches!(hyper, HyperKind::ZScott | HyperKind::StrongZScott).then_some(&ctx.o_z);
            let h = scott_type(ctx.y(), o_z, hyper, &ctx.budget, exec)?;
            lift_open_family(&h, &ctx.maps)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    ACoarser,
    AFiner,
    Incomparable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub relation: Relation,
    /// Opens of `a` that are not open in `b`, ascending.
    pub only_in_a: Vec<Subset>,
    /// Opens of `b` that are not open in `a`, ascending.
    pub only_in_b: Vec<Subset>,
}

/// Minimal neighbourhoods of `a` that are not open in `b`. Every open set
/// is a union of minimal neighbourhoods, so this list is empty exactly
/// when `a ⊆ b`.
fn escaping(a: &FinSpace, b: &FinSpace) -> Vec<Subset> {
    let mut out: Vec<Subset> = a
        .neighborhoods()
        .iter()
        .copied()
        .filter(|&n| !b.is_open(n))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn compare_spaces(a: &FinSpace, b: &FinSpace) -> Result<Comparison> {
    if a.size() != b.size() {
        return Err(TopoError::MismatchedGround);
    }
    let only_in_a = escaping(a, b);
    let only_in_b = escaping(b, a);
    let relation = match (only_in_a.is_empty(), only_in_b.is_empty()) {
        (true, true) => Relation::Equal,
        (true, false) => Relation::ACoarser,
        (false, true) => Relation::AFiner,
        (false, false) => Relation::Incomparable,
    };
    Ok(Comparison {
        relation,
        only_in_a,
        only_in_b,
    })
}

pub fn compare_topologies(a: &FnTopology, b: &FnTopology) -> Result<Comparison> {
    if !same_maps(&a.maps, &b.maps) {
        return Err(TopoError::MismatchedGround);
    }
    compare_spaces(&a.space, &b.space)
}

/// `a ⊆ b` as families of open sets.
pub fn is_coarser(a: &FinSpace, b: &FinSpace) -> bool {
    a.size() == b.size() && a.neighborhoods().iter().all(|&n| b.is_open(n))
}
