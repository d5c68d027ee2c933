//! The dual operators between topologies on `C(Y,Z)` and topologies on
//! `O_Z(Y)`, and admissibility of a topology on `O_Z(Y)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::checkers::evaluation_failure;
use crate::error::{Result, TopoError};
use crate::finspace::{
    from_subbasis_iter, make_space, spaces_up_to, FinSpace, Subset, SubsetFamily, MAX_POINTS,
};
use crate::fntop::{FnKind, FnTopology};
use crate::json::space_value;
use crate::mapspace::{o_z_of, MapSet};
use crate::par::{self, Execution};
use crate::report::VerdictReport;

/// A topology on `O_Z(Y)`: point `i` is the set `ground[i]`.
#[derive(Clone, Debug)]
pub struct DualSpace {
    y: FinSpace,
    z: FinSpace,
    ground: Vec<Subset>,
    space: FinSpace,
}

impl PartialEq for DualSpace {
    fn eq(&self, other: &Self) -> bool {
        self.y == other.y && self.z == other.z && self.space == other.space
    }
}

fn dual_ground(maps: &MapSet) -> Result<Vec<Subset>> {
    let ground = o_z_of(maps).into_members();
    if ground.len() > MAX_POINTS {
        return Err(TopoError::GroundTooLarge {
            size: ground.len(),
            max: MAX_POINTS,
        });
    }
    Ok(ground)
}

impl DualSpace {
    pub fn from_opens(y: &FinSpace, z: &FinSpace, opens: &SubsetFamily) -> Result<Self> {
        let maps = crate::mapspace::enumerate_continuous(y, z)?;
        let ground = dual_ground(&maps)?;
        if opens.ground_size() > ground.len() {
            return Err(TopoError::MismatchedGround);
        }
        let space = make_space(ground.len(), opens)?;
        Ok(DualSpace {
            y: y.clone(),
            z: z.clone(),
            ground,
            space,
        })
    }

    pub fn y(&self) -> &FinSpace {
        &self.y
    }

    pub fn z(&self) -> &FinSpace {
        &self.z
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

    pub fn ground_index(&self, a: Subset) -> Option<usize> {
        self.ground.binary_search(&a).ok()
    }

    pub fn decode(&self, mask: Subset) -> Vec<Subset> {
        mask.points().map(|i| self.ground[i]).collect()
    }
}

/// `τ(t)`: subbasis `(𝓗,U) = {f⁻¹(U) : f ∈ 𝓗}` over opens `𝓗` of `t`.
pub fn tau_of_t(t: &FnTopology) -> Result<DualSpace> {
    let maps = t.maps();
    let ground = dual_ground(maps)?;
    let index = |a: Subset| ground.binary_search(&a).expect("preimages lie in O_Z(Y)");
    let z_opens = maps.codomain().opens().members();
    // `𝓗 ↦ (𝓗,U)` preserves unions, so the minimal neighbourhoods of `t`
    // generate the same topology as all of its opens.
    let subbasis: Vec<Subset> = t
        .space()
        .neighborhoods()
        .iter()
        .flat_map(|&nh| {
            z_opens.iter().map(move |&u| {
                Subset::from_points(nh.points().map(|f| index(maps.get(f).preimage(u))))
            })
        })
        .collect();
    let space = from_subbasis_iter(ground.len(), subbasis);
    Ok(DualSpace {
        y: maps.domain().as_ref().clone(),
        z: maps.codomain().as_ref().clone(),
        ground,
        space,
    })
}

/// `t(τ)`: subbasis `(ℍ,U) = {f : f⁻¹(U) ∈ ℍ}` over opens `ℍ` of `τ`.
pub fn t_of_tau(tau: &DualSpace, maps: &Arc<MapSet>) -> Result<FnTopology> {
    if maps.domain().as_ref() != &tau.y || maps.codomain().as_ref() != &tau.z {
        return Err(TopoError::MismatchedBase(
            "dual space and maps disagree on Y or Z".into(),
        ));
    }
    if maps.len() > MAX_POINTS {
        return Err(TopoError::GroundTooLarge {
            size: maps.len(),
            max: MAX_POINTS,
        });
    }
    let pre = preimage_indices(tau, maps);
    let z_count = maps.codomain().opens().len();
    let subbasis: Vec<Subset> = tau
        .space
        .neighborhoods()
        .iter()
        .flat_map(|&nh| {
            let pre = &pre;
            (0..z_count).map(move |u| {
                Subset::from_points((0..pre.len()).filter(|&f| nh.contains(pre[f][u])))
            })
        })
        .collect();
    let space = from_subbasis_iter(maps.len(), subbasis);
    FnTopology::from_space(maps.clone(), space, FnKind::Custom)
}

fn preimage_indices(tau: &DualSpace, maps: &MapSet) -> Vec<Vec<usize>> {
    maps.iter()
        .map(|f| {
            maps.codomain()
                .opens()
                .iter()
                .map(|&u| {
                    tau.ground_index(f.preimage(u))
                        .expect("preimages lie in O_Z(Y)")
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdmissibilityMode {
    /// Evaluation-map continuity of `t(τ)`.
    ViaDual,
    /// Search over spaces `X` with at most `max_x` points and maps
    /// `G : X → C(Y,Z)`.
    DirectBounded { max_x: usize },
}

/// Largest number of maps `G : X → C(Y,Z)` the direct search will visit.
pub const MAX_DIRECT_CANDIDATES: u64 = 1 << 22;

pub fn is_admissible_on_ozy(
    tau: &DualSpace,
    maps: &Arc<MapSet>,
    mode: AdmissibilityMode,
) -> Result<VerdictReport> {
    is_admissible_on_ozy_with(tau, maps, mode, Execution::default())
}

pub fn is_admissible_on_ozy_with(
    tau: &DualSpace,
    maps: &Arc<MapSet>,
    mode: AdmissibilityMode,
    exec: Execution,
) -> Result<VerdictReport> {
    match mode {
        AdmissibilityMode::ViaDual => {
            let t = t_of_tau(tau, maps)?;
            let mut report =
                VerdictReport::new("admissible on O_Z(Y)", json!({"mode": "via_dual"}));
            report.instance_count = 1;
            report.hypothesis_true_count = 1;
            if let Some(w) = evaluation_failure(maps, t.space()) {
                report.push_witness(json!({
                    "dual_topology": t.opens().members(),
                    "evaluation": w,
                }));
            }
            Ok(report)
        }
        AdmissibilityMode::DirectBounded { max_x } => direct_search(tau, maps, max_x, exec),
    }
}

fn direct_search(
    tau: &DualSpace,
    maps: &Arc<MapSet>,
    max_x: usize,
    exec: Execution,
) -> Result<VerdictReport> {
    if max_x > 4 {
        return Err(TopoError::BudgetExceeded(format!(
            "direct admissibility search over spaces with {max_x} points"
        )));
    }
    let m = maps.len() as u64;
    if m.checked_pow(max_x as u32)
        .is_none_or(|c| c > MAX_DIRECT_CANDIDATES)
    {
        return Err(TopoError::BudgetExceeded(format!(
            "{m}^{max_x} candidate maps into C(Y,Z)"
        )));
    }
    let y = maps.domain();
    let z = maps.codomain();
    let pre = preimage_indices(tau, maps);
    let z_count = z.opens().len();
    let mut report = VerdictReport::new(
        "admissible on O_Z(Y)",
        json!({"mode": "direct_bounded", "max_x": max_x, "reduced": true}),
    );
    for x in spaces_up_to(max_x, true, exec)? {
        let n = x.size();
        let count = m.pow(n as u32);
        let decode = |code: u64| -> Vec<usize> {
            let mut g = Vec::with_capacity(n);
            let mut c = code;
            for _ in 0..n {
                g.push((c % m) as usize);
                c /= m;
            }
            g.reverse();
            g
        };
        let first_variable = |g: &[usize]| {
            (0..z_count).all(|u| {
                (0..n).all(|p| {
                    let target = tau.space.min_nbhd(pre[g[p]][u]);
                    x.min_nbhd(p)
                        .points()
                        .all(|q| target.contains(pre[g[q]][u]))
                })
            })
        };
        let joint = |g: &[usize]| {
            (0..n).all(|p| {
                (0..y.size()).all(|b| {
                    let target = z.min_nbhd(maps.get(g[p]).apply(b));
                    x.min_nbhd(p).points().all(|q| {
                        y.min_nbhd(b)
                            .points()
                            .all(|c| target.contains(maps.get(g[q]).apply(c)))
                    })
                })
            })
        };
        let codes: Vec<u64> = (0..count).collect();
        report.instance_count += count as usize;
        let hit = par::find_first(exec, &codes, |&code| {
            let g = decode(code);
            (first_variable(&g) && !joint(&g)).then_some(g)
        });
        report.hypothesis_true_count += codes
            .iter()
            .filter(|&&c| first_variable(&decode(c)))
            .count();
        if let Some(g) = hit {
            let tables: Vec<Vec<usize>> = g.iter().map(|&i| maps.get(i).table().to_vec()).collect();
            report.push_witness(json!({
                "x": space_value(&x),
                "g": tables,
            }));
            return Ok(report);
        }
    }
    report.status = crate::report::Status::Inconclusive;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fntop::{compare_topologies, named_function_topology, Relation};
    use crate::mapspace::enumerate_continuous;
    use crate::report::Status;

    fn s(points: &[usize]) -> Subset {
        Subset::from_points(points.iter().copied())
    }

    fn t_co_ss() -> FnTopology {
        let sp = FinSpace::sierpinski();
        named_function_topology(FnKind::Co, &sp, &sp).unwrap()
    }

    #[test]
    fn tau_of_compact_open() {
        let tau = tau_of_t(&t_co_ss()).unwrap();
        assert_eq!(tau.ground(), &[Subset::EMPTY, s(&[1]), s(&[0, 1])]);
        assert_eq!(
            tau.opens().members(),
            &[
                Subset::EMPTY,
                s(&[0]),
                s(&[2]),
                s(&[0, 2]),
                s(&[1, 2]),
                s(&[0, 1, 2])
            ]
        );
    }

    #[test]
    fn tau_of_indiscrete_is_generated_by_preimage_sets() {
        let sp = FinSpace::sierpinski();
        let maps = Arc::new(enumerate_continuous(&sp, &sp).unwrap());
        let tau = tau_of_t(&FnTopology::indiscrete(maps).unwrap()).unwrap();
        // all maps with U = ∅, {1}, S give {∅}, all, {S}
        assert_eq!(
            tau.opens().members(),
            &[Subset::EMPTY, s(&[0]), s(&[2]), s(&[0, 2]), s(&[0, 1, 2])]
        );
    }

    #[test]
    fn tau_over_point_is_discrete() {
        let z = FinSpace::chain2();
        let t = named_function_topology(FnKind::Co, &FinSpace::point(), &z).unwrap();
        let tau = tau_of_t(&t).unwrap();
        assert_eq!(tau.ground(), &[Subset::EMPTY, s(&[0])]);
        // ({const0}, ∅) = {∅} and ({const0}, {0}) = {Y}
        assert!(tau.space().is_discrete());
    }

    #[test]
    fn double_dual_of_compact_open() {
        let co = t_co_ss();
        let t = t_of_tau(&tau_of_t(&co).unwrap(), co.maps()).unwrap();
        assert_eq!(
            t.opens().members(),
            &[
                Subset::EMPTY,
                s(&[0]),
                s(&[2]),
                s(&[0, 2]),
                s(&[1, 2]),
                s(&[0, 1, 2])
            ]
        );
        assert_eq!(
            compare_topologies(&t, &co).unwrap().relation,
            Relation::AFiner
        );
    }

    #[test]
    fn t_of_trivial_duals() {
        let co = t_co_ss();
        let trivial = DualSpace::from_opens(
            co.y(),
            co.z(),
            &SubsetFamily::new(3, [Subset::EMPTY, Subset::full(3)]).unwrap(),
        )
        .unwrap();
        assert!(t_of_tau(&trivial, co.maps())
            .unwrap()
            .space()
            .is_indiscrete());

        let z = FinSpace::point();
        let maps = Arc::new(enumerate_continuous(&FinSpace::sierpinski(), &z).unwrap());
        assert_eq!(maps.len(), 1);
        let tau = DualSpace::from_opens(
            &FinSpace::sierpinski(),
            &z,
            &SubsetFamily::new(2, [Subset::EMPTY, Subset::full(2)]).unwrap(),
        )
        .unwrap();
        assert_eq!(t_of_tau(&tau, &maps).unwrap().opens().len(), 2);

        let other =
            Arc::new(enumerate_continuous(&FinSpace::chain2(), &FinSpace::chain2()).unwrap());
        assert!(matches!(
            t_of_tau(&trivial, &other),
            Err(TopoError::MismatchedBase(_))
        ));
    }

    #[test]
    fn admissibility_on_o_z() {
        let co = t_co_ss();
        let tau = tau_of_t(&co).unwrap();
        let r = is_admissible_on_ozy(&tau, co.maps(), AdmissibilityMode::ViaDual).unwrap();
        assert_eq!(r.status, Status::Holds);
        let r = is_admissible_on_ozy(
            &tau,
            co.maps(),
            AdmissibilityMode::DirectBounded { max_x: 2 },
        )
        .unwrap();
        assert_eq!(r.status, Status::Inconclusive);

        let trivial = DualSpace::from_opens(
            co.y(),
            co.z(),
            &SubsetFamily::new(3, [Subset::EMPTY, Subset::full(3)]).unwrap(),
        )
        .unwrap();
        let r = is_admissible_on_ozy(&trivial, co.maps(), AdmissibilityMode::ViaDual).unwrap();
        assert_eq!(r.status, Status::Fails);
        let r = is_admissible_on_ozy(
            &trivial,
            co.maps(),
            AdmissibilityMode::DirectBounded { max_x: 2 },
        )
        .unwrap();
        assert_eq!(r.status, Status::Fails);

        // Over a one-point Y the discrete dual is always admissible; the
        // indiscrete one only when Z carries no information either.
        for z in [
            FinSpace::sierpinski(),
            FinSpace::discrete(2),
            FinSpace::indiscrete(2),
        ] {
            let maps = Arc::new(enumerate_continuous(&FinSpace::point(), &z).unwrap());
            let ground = dual_ground(&maps).unwrap().len();
            let discrete =
                DualSpace::from_opens(&FinSpace::point(), &z, FinSpace::discrete(ground).opens())
                    .unwrap();
            let r = is_admissible_on_ozy(&discrete, &maps, AdmissibilityMode::ViaDual).unwrap();
            assert_eq!(r.status, Status::Holds);
            let indiscrete = DualSpace::from_opens(
                &FinSpace::point(),
                &z,
                &SubsetFamily::new(ground, [Subset::EMPTY, Subset::full(ground)]).unwrap(),
            )
            .unwrap();
            let r = is_admissible_on_ozy(&indiscrete, &maps, AdmissibilityMode::ViaDual).unwrap();
            assert_eq!(r.holds(), z.is_indiscrete());
        }
    }
}
