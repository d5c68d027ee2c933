//! Continuous maps between finite spaces, the family `O_Z(Y)` of preimages
//! of open sets, the `Z`-topology it generates on `Y`, and the `Z`-relative
//! local properties of `Y`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Result, TopoError};
use crate::finspace::{
    bounded_check, compact_check, from_subbasis_iter, local_profile_with, separation_profile,
    subspace, Checked, FinSpace, Provenance, Subset, SubsetFamily,
};

/// A continuous map given by its table: point `p` of the domain goes to
/// `table[p]`.
#[derive(Clone)]
pub struct ContMap {
    domain: Arc<FinSpace>,
    codomain: Arc<FinSpace>,
    table: Vec<usize>,
}

impl ContMap {
    pub fn new(domain: Arc<FinSpace>, codomain: Arc<FinSpace>, table: Vec<usize>) -> Result<Self> {
        if table.len() != domain.size() || table.iter().any(|&v| v >= codomain.size()) {
            return Err(TopoError::Invalid(format!(
                "table {table:?} is not a map from {} to {} points",
                domain.size(),
                codomain.size()
            )));
        }
        if !is_continuous_literal(&domain, &codomain, &table) {
            return Err(TopoError::NotContinuous(table));
        }
        Ok(ContMap {
            domain,
            codomain,
            table,
        })
    }

    pub fn domain(&self) -> &Arc<FinSpace> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FinSpace> {
        &self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, p: usize) -> usize {
        self.table[p]
    }

    pub fn preimage(&self, u: Subset) -> Subset {
        preimage(&self.table, u)
    }

    pub fn image(&self, s: Subset) -> Subset {
        Subset::from_points(s.points().map(|p| self.table[p]))
    }
}

impl std::fmt::Debug for ContMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ContMap{:?}", self.table)
    }
}

impl PartialEq for ContMap {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.domain == other.domain && self.codomain == other.codomain
    }
}

pub(crate) fn preimage(table: &[usize], u: Subset) -> Subset {
    Subset::from_points((0..table.len()).filter(|&p| u.contains(table[p])))
}

/// Continuity by definition: the preimage of every open set is open.
pub fn is_continuous_literal(domain: &FinSpace, codomain: &FinSpace, table: &[usize]) -> bool {
    codomain
        .opens()
        .iter()
        .all(|&u| domain.opens().contains(preimage(table, u)))
}

/// Continuity through minimal neighbourhoods: `f(N(p)) ⊆ N(f(p))`.
pub fn is_continuous(domain: &FinSpace, codomain: &FinSpace, table: &[usize]) -> bool {
    (0..domain.size()).all(|p| {
        let target = codomain.min_nbhd(table[p]);
        domain
            .min_nbhd(p)
            .points()
            .all(|q| target.contains(table[q]))
    })
}

/// All continuous maps `Y → Z`, tables in lexicographic order.
#[derive(Clone, Debug)]
pub struct MapSet {
    domain: Arc<FinSpace>,
    codomain: Arc<FinSpace>,
    maps: Vec<ContMap>,
    index: HashMap<Vec<usize>, usize>,
}

impl MapSet {
    pub fn domain(&self) -> &Arc<FinSpace> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FinSpace> {
        &self.codomain
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn get(&self, i: usize) -> &ContMap {
        &self.maps[i]
    }

    pub fn maps(&self) -> &[ContMap] {
        &self.maps
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ContMap> {
        self.maps.iter()
    }

    pub fn index_of(&self, table: &[usize]) -> Option<usize> {
        self.index.get(table).copied()
    }

    pub fn tables(&self) -> Vec<Vec<usize>> {
        self.maps.iter().map(|m| m.table.clone()).collect()
    }

    /// Index of the constant map with value `v`, if continuous.
    pub fn constant(&self, v: usize) -> Option<usize> {
        self.index_of(&vec![v; self.domain.size()])
    }
}

pub fn enumerate_continuous(y: &FinSpace, z: &FinSpace) -> Result<MapSet> {
    enumerate_continuous_with(y, z, &Budget::default())
}

pub fn enumerate_continuous_with(y: &FinSpace, z: &FinSpace, budget: &Budget) -> Result<MapSet> {
    if y.size() > budget.max_domain || z.size() > budget.max_codomain {
        return Err(TopoError::BudgetExceeded(format!(
            "maps from {} to {} points exceed the {}x{} map budget",
            y.size(),
            z.size(),
            budget.max_domain,
            budget.max_codomain
        )));
    }
    Ok(continuous_maps(Arc::new(y.clone()), Arc::new(z.clone())))
}

/// Depth-first enumeration over points in order; values ascend at every
/// level, so tables come out lexicographically sorted.
pub(crate) fn continuous_maps(y: Arc<FinSpace>, z: Arc<FinSpace>) -> MapSet {
    fn extend(y: &FinSpace, z: &FinSpace, table: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let p = table.len();
        if p == y.size() {
            out.push(table.clone());
            return;
        }
        for v in 0..z.size() {
            let ok = (0..p).all(|q| {
                (!y.leq(p, q) || z.leq(v, table[q])) && (!y.leq(q, p) || z.leq(table[q], v))
            });
            if ok {
                table.push(v);
                extend(y, z, table, out);
                table.pop();
            }
        }
    }
    let mut tables = Vec::new();
    extend(&y, &z, &mut Vec::with_capacity(y.size()), &mut tables);
    let maps: Vec<ContMap> = tables
        .into_iter()
        .map(|table| ContMap {
            domain: y.clone(),
            codomain: z.clone(),
            table,
        })
        .collect();
    let index = maps
        .iter()
        .enumerate()
        .map(|(i, m)| (m.table.clone(), i))
        .collect();
    MapSet {
        domain: y,
        codomain: z,
        maps,
        index,
    }
}

/// `O_Z(Y) = { f⁻¹(U) : f ∈ C(Y,Z), U open in Z }`.
pub fn o_z_family(y: &FinSpace, z: &FinSpace) -> Result<SubsetFamily> {
    Ok(ZContext::new(y, z, &Budget::default())?.o_z)
}

/// The topology on `Y` generated by `O_Z(Y)`.
pub fn z_topology(y: &FinSpace, z: &FinSpace) -> Result<FinSpace> {
    Ok(ZContext::new(y, z, &Budget::default())?.z_top)
}

pub(crate) fn o_z_of(maps: &MapSet) -> SubsetFamily {
    let y = maps.domain();
    let members = maps
        .iter()
        .flat_map(|f| maps.codomain().opens().iter().map(move |&u| f.preimage(u)));
    SubsetFamily::new(y.size(), members).expect("preimages lie in the domain")
}

/// Everything derived from a pair `(Y, Z)` that the hyperspace and
/// function-space constructions keep reusing.
#[derive(Clone, Debug)]
pub struct ZContext {
    pub maps: Arc<MapSet>,
    pub o_z: SubsetFamily,
    pub z_top: FinSpace,
    pub budget: Budget,
}

impl ZContext {
    pub fn new(y: &FinSpace, z: &FinSpace, budget: &Budget) -> Result<Self> {
        let maps = enumerate_continuous_with(y, z, budget)?;
        Ok(Self::from_maps(maps, budget))
    }

    pub fn from_maps(maps: MapSet, budget: &Budget) -> Self {
        let o_z = o_z_of(&maps);
        let z_top = from_subbasis_iter(maps.domain().size(), o_z.iter().copied());
        ZContext {
            maps: Arc::new(maps),
            o_z,
            z_top,
            budget: *budget,
        }
    }

    pub fn y(&self) -> &FinSpace {
        self.maps.domain()
    }

    pub fn z(&self) -> &FinSpace {
        self.maps.codomain()
    }

    /// `a ≪ u`: `a ⊆ u` and `a` is bounded in the subspace `u` of
    /// `(Y, τ_Y^Z)`.
    pub fn way_below(&self, a: Subset, u: Subset) -> Result<Checked<bool>> {
        self.check_way_below_args(a, u)?;
        if !a.is_subset_of(u) {
            return Ok(Checked {
                value: false,
                provenance: Provenance::Literal,
            });
        }
        let sub = subspace(&self.z_top, u)?;
        let local = reindex(a, u);
        bounded_check(&sub, local, self.budget.cover_opens)
    }

    /// Finite-scale form of [`ZContext::way_below`]: plain containment.
    pub fn way_below_collapsed(&self, a: Subset, u: Subset) -> Result<bool> {
        self.check_way_below_args(a, u)?;
        Ok(a.is_subset_of(u))
    }

    fn check_way_below_args(&self, a: Subset, u: Subset) -> Result<()> {
        if !self.o_z.contains(a) {
            return Err(TopoError::NotZRepresentable(a));
        }
        if !self.y().is_open(u) {
            return Err(TopoError::NotOpen(u));
        }
        Ok(())
    }

    /// `Z`-boundedness: bounded in `(Y, τ_Y^Z)`.
    pub fn z_bounded(&self, b: Subset) -> Result<Checked<bool>> {
        bounded_check(&self.z_top, b, self.budget.cover_opens)
    }

    pub fn z_compact(&self, k: Subset) -> Result<Checked<bool>> {
        compact_check(&self.z_top, k, self.budget.cover_opens)
    }

    pub fn profile(&self) -> Result<RelativeProfile> {
        let y = self.y();
        let mut provenance = Provenance::Literal;
        let mut note = |p: Provenance| {
            if p == Provenance::FiniteShortcut {
                provenance = p;
            }
        };

        let z_local = local_profile_with(&self.z_top, self.budget.cover_opens);
        note(z_local.provenance);
        let locally_z_compact = z_local.locally_compact;

        let mut locally_z_bounded = true;
        let mut z_corecompact = true;
        for p in 0..y.size() {
            for &u in y.opens().iter().filter(|u| u.contains(p)) {
                let candidates: Vec<Subset> = self
                    .o_z
                    .iter()
                    .copied()
                    .filter(|a| a.contains(p) && a.is_subset_of(u))
                    .collect();
                let mut bounded = false;
                for &a in &candidates {
                    let c = self.z_bounded(a)?;
                    note(c.provenance);
                    if c.value {
                        bounded = true;
                        break;
                    }
                }
                locally_z_bounded &= bounded;
                let mut below = false;
                for &a in &candidates {
                    let c = self.way_below(a, u)?;
                    note(c.provenance);
                    if c.value {
                        below = true;
                        break;
                    }
                }
                z_corecompact &= below;
            }
        }
        let regular_locally_z_compact = separation_profile(y).regular && locally_z_compact;
        Ok(RelativeProfile {
            locally_z_compact,
            locally_z_bounded,
            z_corecompact,
            regular_locally_z_compact,
            o_z: self.o_z.clone(),
            z_top: self.z_top.clone(),
            provenance,
        })
    }
}

fn reindex(a: Subset, carrier: Subset) -> Subset {
    Subset::from_points(
        carrier
            .points()
            .enumerate()
            .filter(|(_, p)| a.contains(*p))
            .map(|(i, _)| i),
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct RelativeProfile {
    pub locally_z_compact: bool,
    pub locally_z_bounded: bool,
    pub z_corecompact: bool,
    pub regular_locally_z_compact: bool,
    #[serde(skip)]
    pub o_z: SubsetFamily,
    #[serde(skip)]
    pub z_top: FinSpace,
    pub provenance: Provenance,
}

pub fn relative_profile(y: &FinSpace, z: &FinSpace) -> Result<RelativeProfile> {
    ZContext::new(y, z, &Budget::default())?.profile()
}

pub fn way_below_z(y: &FinSpace, z: &FinSpace, a: Subset, u: Subset) -> Result<bool> {
    Ok(ZContext::new(y, z, &Budget::default())?
        .way_below(a, u)?
        .value)
}

/// The pairing `V ↔ χ_V` between open sets of `Y` and continuous maps into
/// the Sierpiński space.
#[derive(Clone, Debug)]
pub struct SierpinskiCorrespondence {
    pairs: Vec<(Subset, ContMap)>,
    maps: MapSet,
}

impl SierpinskiCorrespondence {
    pub fn pairs(&self) -> &[(Subset, ContMap)] {
        &self.pairs
    }

    /// `C(Y, S)` in canonical order.
    pub fn maps(&self) -> &MapSet {
        &self.maps
    }

    pub fn map_of(&self, v: Subset) -> Option<&ContMap> {
        self.pairs.iter().find(|(u, _)| *u == v).map(|(_, m)| m)
    }

    pub fn open_of(&self, table: &[usize]) -> Option<Subset> {
        self.pairs
            .iter()
            .find(|(_, m)| m.table() == table)
            .map(|(u, _)| *u)
    }
}

pub fn characteristic_table(size: usize, v: Subset) -> Vec<usize> {
    (0..size).map(|p| usize::from(v.contains(p))).collect()
}

pub fn sierpinski_correspondence(y: &FinSpace) -> Result<SierpinskiCorrespondence> {
    let yy = Arc::new(y.clone());
    let s = Arc::new(FinSpace::sierpinski());
    let pairs = y
        .opens()
        .iter()
        .map(|&v| {
            Ok((
                v,
                ContMap::new(yy.clone(), s.clone(), characteristic_table(y.size(), v))?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let maps = continuous_maps(yy, s);
    let bijective = maps.len() == pairs.len()
        && pairs.iter().all(|(v, m)| {
            maps.index_of(m.table()).is_some() && m.preimage(Subset::singleton(1)) == *v
        });
    if !bijective {
        return Err(TopoError::CollapseMismatch("open sets versus maps into S"));
    }
    Ok(SierpinskiCorrespondence { pairs, maps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tables(y: &FinSpace, z: &FinSpace) -> Vec<Vec<usize>> {
        enumerate_continuous(y, z).unwrap().tables()
    }

    #[test]
    fn maps_sierpinski_to_itself() {
        let s = FinSpace::sierpinski();
        assert_eq!(tables(&s, &s), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert!(!is_continuous_literal(&s, &s, &[1, 0]));
    }

    #[test]
    fn maps_into_indiscrete_and_from_point() {
        for y in [
            FinSpace::sierpinski(),
            FinSpace::discrete(3),
            FinSpace::chain2(),
        ] {
            assert_eq!(tables(&y, &FinSpace::indiscrete(2)).len(), 1 << y.size());
        }
        let z = FinSpace::discrete(3);
        assert_eq!(
            tables(&FinSpace::point(), &z),
            vec![vec![0], vec![1], vec![2]]
        );
    }

    #[test]
    fn map_budget() {
        let big = FinSpace::discrete(5);
        assert!(matches!(
            enumerate_continuous(&big, &FinSpace::point()),
            Err(TopoError::BudgetExceeded(_))
        ));
    }

    #[test]
    fn contmap_rejects_discontinuous_tables() {
        let s = Arc::new(FinSpace::sierpinski());
        assert!(matches!(
            ContMap::new(s.clone(), s.clone(), vec![1, 0]),
            Err(TopoError::NotContinuous(_))
        ));
        assert!(ContMap::new(s.clone(), s, vec![0, 2]).is_err());
    }

    #[test]
    fn o_z_examples() {
        let chain = FinSpace::chain2();
        let ind = FinSpace::indiscrete(2);
        assert_eq!(
            o_z_family(&chain, &ind).unwrap().members(),
            &[Subset::EMPTY, Subset::full(2)]
        );
        let s = FinSpace::sierpinski();
        assert_eq!(&o_z_family(&chain, &s).unwrap(), chain.opens());
        assert_eq!(
            o_z_family(&s, &FinSpace::discrete(2)).unwrap().members(),
            &[Subset::EMPTY, Subset::full(2)]
        );
    }

    #[test]
    fn z_topology_examples() {
        let chain = FinSpace::chain2();
        assert!(z_topology(&chain, &FinSpace::indiscrete(2))
            .unwrap()
            .is_indiscrete());
        assert_eq!(z_topology(&chain, &FinSpace::sierpinski()).unwrap(), chain);
        let s = FinSpace::sierpinski();
        assert!(z_topology(&s, &FinSpace::discrete(2))
            .unwrap()
            .is_indiscrete());
    }

    #[test]
    fn relative_profile_examples() {
        let p = relative_profile(&FinSpace::chain2(), &FinSpace::indiscrete(2)).unwrap();
        assert!(!p.locally_z_bounded && !p.z_corecompact);
        assert!(p.locally_z_compact);

        let p = relative_profile(&FinSpace::discrete(3), &FinSpace::sierpinski()).unwrap();
        assert!(p.locally_z_bounded && p.z_corecompact);

        for z in [
            FinSpace::point(),
            FinSpace::indiscrete(2),
            FinSpace::sierpinski(),
        ] {
            let p = relative_profile(&FinSpace::point(), &z).unwrap();
            assert!(p.locally_z_compact && p.locally_z_bounded && p.z_corecompact);
            assert!(p.regular_locally_z_compact);
        }
    }

    #[test]
    fn way_below_examples() {
        let chain = FinSpace::chain2();
        let ind = FinSpace::indiscrete(2);
        let full = Subset::full(2);
        assert!(way_below_z(&chain, &ind, full, full).unwrap());
        assert!(way_below_z(&chain, &ind, Subset::EMPTY, Subset::singleton(0)).unwrap());
        let s = FinSpace::sierpinski();
        assert!(!way_below_z(&s, &s, full, Subset::singleton(1)).unwrap());
        assert!(matches!(
            way_below_z(&chain, &ind, Subset::singleton(0), full),
            Err(TopoError::NotZRepresentable(_))
        ));
        assert!(matches!(
            way_below_z(&chain, &ind, Subset::EMPTY, Subset::singleton(1)),
            Err(TopoError::NotOpen(_))
        ));
    }

    #[test]
    fn sierpinski_correspondence_examples() {
        let c = sierpinski_correspondence(&FinSpace::sierpinski()).unwrap();
        let got: Vec<(Subset, Vec<usize>)> = c
            .pairs()
            .iter()
            .map(|(v, m)| (*v, m.table().to_vec()))
            .collect();
        assert_eq!(
            got,
            vec![
                (Subset::EMPTY, vec![0, 0]),
                (Subset::singleton(1), vec![0, 1]),
                (Subset::full(2), vec![1, 1]),
            ]
        );
        assert_eq!(
            sierpinski_correspondence(&FinSpace::indiscrete(2))
                .unwrap()
                .pairs()
                .len(),
            2
        );
        assert_eq!(
            sierpinski_correspondence(&FinSpace::discrete(2))
                .unwrap()
                .pairs()
                .len(),
            4
        );
    }
}
