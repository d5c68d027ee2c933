//! Flat JSON file formats for spaces, function-space topologies,
//! hyperspaces and dual spaces.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::duality::DualSpace;
use crate::error::{Result, TopoError};
use crate::finspace::{FinSpace, Subset, SubsetFamily};
use crate::fntop::{FnKind, FnTopology};
use crate::hypertop::{HyperKind, HyperSpace};
use crate::mapspace::{continuous_maps, MapSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub points: usize,
    pub opens: Vec<Subset>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl SpaceFile {
    pub fn from_space(x: &FinSpace) -> Self {
        SpaceFile {
            name: None,
            points: x.size(),
            opens: x.opens().members().to_vec(),
            labels: x.labels().map(<[String]>::to_vec),
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Validates the file against the topology axioms.
    pub fn to_space(&self) -> Result<FinSpace> {
        let family = SubsetFamily::new(self.points, self.opens.iter().copied())?;
        let x = crate::finspace::make_space(self.points, &family)?;
        match &self.labels {
            Some(labels) => x.with_labels(labels.clone()),
            None => Ok(x),
        }
    }
}

pub fn space_value(x: &FinSpace) -> serde_json::Value {
    serde_json::to_value(SpaceFile::from_space(x)).expect("space files serialize")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FnTopologyFile {
    pub y: SpaceFile,
    pub z: SpaceFile,
    pub maps: Vec<Vec<usize>>,
    pub opens: Vec<Subset>,
    pub provenance: FnKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl FnTopologyFile {
    pub fn from_topology(t: &FnTopology) -> Self {
        FnTopologyFile {
            y: SpaceFile::from_space(t.y()),
            z: SpaceFile::from_space(t.z()),
            maps: t.maps().tables(),
            opens: t.opens().members().to_vec(),
            provenance: t.kind(),
            note: t.note().map(str::to_owned),
        }
    }

    /// Rebuilds the topology; the listed maps must be exactly `C(Y,Z)` in
    /// canonical order.
    pub fn to_topology(&self) -> Result<FnTopology> {
        let y = self.y.to_space()?;
        let z = self.z.to_space()?;
        let maps = load_maps(y, z, &self.maps)?;
        let family = SubsetFamily::new(maps.len(), self.opens.iter().copied())?;
        let t = FnTopology::from_opens(maps, &family)?;
        let space = t.space().clone();
        let t = FnTopology::from_space(t.maps().clone(), space, self.provenance)?;
        Ok(match &self.note {
            Some(n) => t.with_note(n.clone()),
            None => t,
        })
    }
}

fn load_maps(y: FinSpace, z: FinSpace, tables: &[Vec<usize>]) -> Result<Arc<MapSet>> {
    let maps = continuous_maps(Arc::new(y), Arc::new(z));
    if maps.tables() != tables {
        return Err(TopoError::Invalid(
            "listed maps are not C(Y,Z) in canonical order".into(),
        ));
    }
    Ok(Arc::new(maps))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperFile {
    pub base: SpaceFile,
    pub kind: HyperKind,
    pub ground: Vec<Subset>,
    /// Each open is a list of ground indices.
    pub opens: Vec<Subset>,
}

impl HyperFile {
    pub fn from_hyperspace(h: &HyperSpace) -> Self {
        HyperFile {
            base: SpaceFile::from_space(h.base()),
            kind: h.kind(),
            ground: h.ground().to_vec(),
            opens: h.opens().members().to_vec(),
        }
    }

    pub fn to_hyperspace(&self) -> Result<HyperSpace> {
        let base = self.base.to_space()?;
        if base.opens().members() != &self.ground[..] {
            return Err(TopoError::MismatchedGround);
        }
        let family = SubsetFamily::new(self.ground.len(), self.opens.iter().copied())?;
        HyperSpace::from_opens(base, &family)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualFile {
    pub base: SpaceFile,
    pub z: SpaceFile,
    pub ground: Vec<Subset>,
    pub opens: Vec<Subset>,
}

impl DualFile {
    pub fn from_dual(d: &DualSpace) -> Self {
        DualFile {
            base: SpaceFile::from_space(d.y()),
            z: SpaceFile::from_space(d.z()),
            ground: d.ground().to_vec(),
            opens: d.opens().members().to_vec(),
        }
    }

    pub fn to_dual(&self) -> Result<DualSpace> {
        let y = self.base.to_space()?;
        let z = self.z.to_space()?;
        let family = SubsetFamily::new(self.ground.len(), self.opens.iter().copied())?;
        let d = DualSpace::from_opens(&y, &z, &family)?;
        if d.ground() != &self.ground[..] {
            return Err(TopoError::MismatchedGround);
        }
        Ok(d)
    }
}
