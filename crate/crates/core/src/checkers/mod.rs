//! Decision procedures: admissibility through the evaluation map, bounded
//! refutation of splitting, continuity of composition, and the exhaustive
//! theorem suites.
//!
//! Continuity checks run on minimal neighbourhoods. In a finite space a map
//! `g` is continuous at `p` iff it sends `N(p)` into `N(g(p))`, and the
//! minimal neighbourhood of `(a, b)` in a product is `N(a) × N(b)`.

mod suite;

use std::sync::Arc;

use serde::Serialize;
use serde_json::json;

use crate::budget::Budget;
use crate::error::{Result, TopoError};
use crate::finspace::{product, spaces_up_to, FinSpace, Subset};
use crate::fntop::{named_in, FnKind, FnTopology};
use crate::json::space_value;
use crate::mapspace::{continuous_maps, MapSet, ZContext};
use crate::par::{self, Execution};
use crate::report::{Status, VerdictReport};

pub use suite::{
    diagram_regressions, monotonicity_check, sierpinski_suite, theorem_suite, theorem_suite_with,
    PairFacts, SuiteOptions,
};

/// Why the evaluation map `C_t(Y,Z) × Y → Z` is discontinuous.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvalFailure {
    /// The open set of `Z` whose preimage is not open.
    pub w: Subset,
    /// `e⁻¹(W)` as `(map index, point)` pairs.
    pub preimage: Vec<(usize, usize)>,
    /// A point of the preimage none of whose basic neighbourhoods fit.
    pub point: (usize, usize),
    /// A point of that point's minimal neighbourhood outside the preimage.
    pub escape: (usize, usize),
}

/// First open `W` of `Z` (canonical order) whose evaluation preimage fails
/// to be open in `space × Y`, where `space` is a topology on the maps.
pub fn evaluation_failure(maps: &MapSet, space: &FinSpace) -> Option<EvalFailure> {
    let y = maps.domain();
    let z = maps.codomain();
    for &w in z.opens().iter() {
        let inside = |f: usize, b: usize| w.contains(maps.get(f).apply(b));
        for f in 0..maps.len() {
            for b in (0..y.size()).filter(|&b| inside(f, b)) {
                let escape = space
                    .min_nbhd(f)
                    .points()
                    .flat_map(|g| y.min_nbhd(b).points().map(move |c| (g, c)))
                    .find(|&(g, c)| !inside(g, c));
                if let Some(escape) = escape {
                    let preimage = (0..maps.len())
                        .flat_map(|g| (0..y.size()).map(move |c| (g, c)))
                        .filter(|&(g, c)| inside(g, c))
                        .collect();
                    return Some(EvalFailure {
                        w,
                        preimage,
                        point: (f, b),
                        escape,
                    });
                }
            }
        }
    }
    None
}

pub fn is_admissible_space(maps: &MapSet, space: &FinSpace) -> bool {
    evaluation_failure(maps, space).is_none()
}

/// Admissibility of `t`: continuity of the evaluation map.
pub fn is_admissible(t: &FnTopology) -> VerdictReport {
    let mut report = VerdictReport::new("admissible", json!({}));
    report.instance_count = 1;
    report.hypothesis_true_count = 1;
    if let Some(w) = evaluation_failure(t.maps(), t.space()) {
        report.push_witness(json!({ "topology": t.kind(), "evaluation": w }));
    }
    report.with_details(json!({
        "y": space_value(t.y()),
        "z": space_value(t.z()),
        "kind": t.kind(),
    }))
}

/// A continuous `F : X × Y → Z` whose transpose `X → C_t(Y,Z)` is not
/// continuous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitFailure {
    pub x: FinSpace,
    /// `F` as a table over `X × Y`, row-major in `x`.
    pub f: Vec<usize>,
    /// An open set of `C_t(Y,Z)` (map indices) with a non-open preimage.
    pub open: Subset,
    /// Its preimage under the transpose.
    pub preimage: Subset,
}

impl SplitFailure {
    pub fn to_json(&self, maps: &MapSet) -> serde_json::Value {
        let transpose: Vec<Vec<usize>> = (0..self.x.size())
            .map(|p| self.f[p * maps.domain().size()..(p + 1) * maps.domain().size()].to_vec())
            .collect();
        json!({
            "x": space_value(&self.x),
            "f": self.f,
            "transpose": transpose,
            "open": self.open,
            "preimage": self.preimage,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SplitOptions {
    pub max_x: usize,
    /// Try one space per homeomorphism class only.
    pub reduce: bool,
    #[serde(skip)]
    pub exec: Execution,
}

impl SplitOptions {
    pub fn new(max_x: usize) -> Self {
        SplitOptions {
            max_x,
            reduce: true,
            exec: Execution::default(),
        }
    }
}

/// Largest `|Z|^(|X|·|Y|)` table count the splitting search may enumerate
/// through.
pub const MAX_SPLIT_TABLES: f64 = (1u64 << 24) as f64;

/// Searches spaces `X` up to `opts.max_x` points for a splitting violation
/// of the topology `space` on `maps`; returns the first one found and the
/// number of maps `F` examined.
pub fn splitting_failure(
    maps: &MapSet,
    space: &FinSpace,
    opts: SplitOptions,
) -> Result<(Option<SplitFailure>, usize)> {
    if opts.max_x > 4 {
        return Err(TopoError::BudgetExceeded(format!(
            "splitting search over spaces with {} points",
            opts.max_x
        )));
    }
    let y = maps.domain();
    let z = maps.codomain();
    let cells = opts.max_x * y.size();
    if (z.size() as f64).powi(cells as i32) > MAX_SPLIT_TABLES {
        return Err(TopoError::BudgetExceeded(format!(
            "maps from {cells} points into {} points",
            z.size()
        )));
    }
    let z_arc = Arc::new(z.as_ref().clone());
    let ny = y.size();
    let mut examined = 0;
    for x in spaces_up_to(opts.max_x, opts.reduce, opts.exec)? {
        let p = product(&x, y)?;
        let fs = continuous_maps(Arc::new(p), z_arc.clone());
        examined += fs.len();
        let hit = par::find_first(opts.exec, fs.maps(), |f| {
            let table = f.table();
            let hat: Vec<usize> = (0..x.size())
                .map(|a| {
                    maps.index_of(&table[a * ny..(a + 1) * ny])
                        .expect("sections of a continuous map are continuous")
                })
                .collect();
            (0..x.size()).find_map(|a| {
                let target = space.min_nbhd(hat[a]);
                x.min_nbhd(a)
                    .points()
                    .any(|b| !target.contains(hat[b]))
                    .then(|| SplitFailure {
                        x: x.clone(),
                        f: table.to_vec(),
                        open: target,
                        preimage: Subset::from_points(
                            (0..x.size()).filter(|&c| target.contains(hat[c])),
                        ),
                    })
            })
        });
        if hit.is_some() {
            return Ok((hit, examined));
        }
    }
    Ok((None, examined))
}

/// Bounded refutation of splitting: `fails` with a witness `(X, F)`, or
/// `inconclusive` when no violation exists within the bound.
pub fn refute_splitting(t: &FnTopology, max_x: usize) -> Result<VerdictReport> {
    refute_splitting_with(t, SplitOptions::new(max_x))
}

pub fn refute_splitting_with(t: &FnTopology, opts: SplitOptions) -> Result<VerdictReport> {
    let (failure, examined) = splitting_failure(t.maps(), t.space(), opts)?;
    let mut report = VerdictReport::new(
        "splitting",
        json!({"max_x": opts.max_x, "reduced": opts.reduce}),
    );
    report.instance_count = examined;
    report.hypothesis_true_count = examined;
    match failure {
        Some(w) => report.push_witness(w.to_json(t.maps())),
        None => report.status = Status::Inconclusive,
    }
    Ok(report.with_details(json!({
        "y": space_value(t.y()),
        "z": space_value(t.z()),
        "kind": t.kind(),
    })))
}

/// `(f, g) ↦ g ∘ f` is continuous at every point, or the first pair where
/// it is not together with a nearby pair that lands outside the target
/// neighbourhood.
pub fn composition_failure(
    a: &FnTopology,
    b: &FnTopology,
    c: &FnTopology,
) -> Option<((usize, usize), (usize, usize))> {
    let compose = |f: usize, g: usize| -> usize {
        let table: Vec<usize> = a
            .maps()
            .get(f)
            .table()
            .iter()
            .map(|&p| b.maps().get(g).apply(p))
            .collect();
        c.maps()
            .index_of(&table)
            .expect("composites of continuous maps are continuous")
    };
    let table: Vec<Vec<usize>> = (0..a.maps().len())
        .map(|f| (0..b.maps().len()).map(|g| compose(f, g)).collect())
        .collect();
    for f in 0..a.maps().len() {
        for g in 0..b.maps().len() {
            let target = c.min_nbhd(table[f][g]);
            for f2 in a.min_nbhd(f).points() {
                for g2 in b.min_nbhd(g).points() {
                    if !target.contains(table[f2][g2]) {
                        return Some(((f, g), (f2, g2)));
                    }
                }
            }
        }
    }
    None
}

/// Which relative property the composition theorem for these kinds
/// assumes of `Y`.
fn composition_hypothesis(kind: FnKind) -> Option<&'static str> {
    match kind {
        FnKind::Co | FnKind::CoZ => Some("locally_z_compact"),
        FnKind::T1SZ | FnKind::StrongIsbell => Some("locally_z_bounded"),
        FnKind::T1Z | FnKind::Isbell => Some("z_corecompact"),
        FnKind::Custom => None,
    }
}

pub fn composition_check(
    x: &FinSpace,
    y: &FinSpace,
    z: &FinSpace,
    kinds: [FnKind; 3],
) -> Result<VerdictReport> {
    composition_check_with(x, y, z, kinds, &Budget::default(), Execution::default())
}

/// Continuity of `T : C(X,Y) × C(Y,Z) → C(X,Z)`, `T(f,g) = g ∘ f`, with
/// the three named topologies taken relative to `Y`, `Z` and `Z`.
pub fn composition_check_with(
    x: &FinSpace,
    y: &FinSpace,
    z: &FinSpace,
    kinds: [FnKind; 3],
    budget: &Budget,
    exec: Execution,
) -> Result<VerdictReport> {
    let xy = ZContext::new(x, y, budget)?;
    let yz = ZContext::new(y, z, budget)?;
    let xz = ZContext::new(x, z, budget)?;
    let a = named_in(&xy, kinds[0], exec)?;
    let b = named_in(&yz, kinds[1], exec)?;
    let c = named_in(&xz, kinds[2], exec)?;
    let profile = yz.profile()?;
    let flags = json!({
        "locally_z_compact": profile.locally_z_compact,
        "locally_z_bounded": profile.locally_z_bounded,
        "z_corecompact": profile.z_corecompact,
    });
    let hypothesis = composition_hypothesis(kinds[1]);
    let kind_names: Vec<&str> = kinds.iter().map(|k| k.as_str()).collect();
    let mut report = VerdictReport::new(
        format!("composition continuous ({})", kind_names.join(",")),
        serde_json::to_value(budget).expect("budgets serialize"),
    );
    report.instance_count = 1;
    report.hypothesis_true_count =
        usize::from(hypothesis.is_some_and(|h| flags[h].as_bool().unwrap_or(false)));
    if let Some(((f, g), (f2, g2))) = composition_failure(&a, &b, &c) {
        report.push_witness(json!({
            "f": a.maps().get(f).table(),
            "g": b.maps().get(g).table(),
            "near_f": a.maps().get(f2).table(),
            "near_g": b.maps().get(g2).table(),
        }));
    }
    Ok(report.with_details(json!({
        "x": space_value(x),
        "y": space_value(y),
        "z": space_value(z),
        "kinds": kinds,
        "hypothesis": hypothesis,
        "hypotheses": flags,
    })))
}
