//! Exhaustive theorem suites over all pairs of small spaces.
//!
//! Every claim is evaluated on every pair as a material conditional
//! `hypothesis ⇒ conclusion`; the aggregated report counts the pairs where
//! the hypothesis held, so a claim that never fired is reported as
//! inconclusive instead of passing vacuously.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::{composition_failure, evaluation_failure, splitting_failure, SplitOptions};
use crate::budget::Budget;
use crate::duality::{is_admissible_on_ozy_with, t_of_tau, tau_of_t, AdmissibilityMode};
use crate::error::{Result, TopoError};
use crate::finspace::{
    from_subbasis_iter, local_profile_with, separation_profile, spaces_up_to, FinSpace, Separation,
    Subset,
};
use crate::fntop::{
    compare_spaces, is_coarser, kset_topology_in, lift_open_family, named_in, Compactness, FnKind,
    FnTopology, Relation,
};
use crate::hypertop::{
    compact_subbasis_topology_with, scott_type, up_family, HyperKind, HyperSpace, UpMode,
};
use crate::json::space_value;
use crate::mapspace::{characteristic_table, MapSet, ZContext};
use crate::par::{self, Execution};
use crate::report::{Status, VerdictReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteOptions {
    pub max_y: usize,
    pub max_z: usize,
    /// Largest `X` tried when refuting splitting.
    pub split_max_x: usize,
    /// Largest `X` tried by the direct admissibility search on `O_Z(Y)`.
    pub direct_max_x: usize,
    /// Largest `X` in the composition triples `(X, Y, Z)`.
    pub compose_max_x: usize,
    /// Random refinements drawn per admissible topology and pair.
    pub monotone_samples: usize,
    pub seed: u64,
    #[serde(skip)]
    pub exec: Execution,
}

impl SuiteOptions {
    pub fn new(max_y: usize, max_z: usize) -> Self {
        SuiteOptions {
            max_y,
            max_z,
            split_max_x: 2,
            direct_max_x: 2,
            compose_max_x: 2,
            monotone_samples: 100,
            seed: 0x5eed,
            exec: Execution::default(),
        }
    }
}

struct Outcome {
    claim: &'static str,
    hypothesis: bool,
    holds: bool,
    witness: Option<Value>,
}

#[derive(Default)]
struct Outcomes {
    list: Vec<Outcome>,
    notes: Vec<(&'static str, String)>,
}

impl Outcomes {
    fn record(
        &mut self,
        claim: &'static str,
        hypothesis: bool,
        holds: bool,
        witness: impl FnOnce() -> Value,
    ) {
        let failed = hypothesis && !holds;
        self.list.push(Outcome {
            claim,
            hypothesis,
            holds: !failed,
            witness: failed.then(witness),
        });
    }

    fn fact(&mut self, claim: &'static str, holds: bool, witness: impl FnOnce() -> Value) {
        self.record(claim, true, holds, witness);
    }

    fn note(&mut self, key: &'static str, value: impl Into<String>) {
        self.notes.push((key, value.into()));
    }
}

/// The named function-space topologies of one pair, in [`FnKind::NAMED`]
/// order, with the hyperspaces they were lifted from.
pub struct PairFacts {
    pub ctx: ZContext,
    pub hyper: [HyperSpace; 4],
    pub named: Vec<FnTopology>,
}

impl PairFacts {
    pub fn new(y: &FinSpace, z: &FinSpace, budget: &Budget, exec: Execution) -> Result<Self> {
        let ctx = ZContext::new(y, z, budget)?;
        let kinds = [
            HyperKind::Scott,
            HyperKind::StrongScott,
            HyperKind::ZScott,
            HyperKind::StrongZScott,
        ];
        let hyper = kinds.map(|k| {
            let o_z = matches!(k, HyperKind::ZScott | HyperKind::StrongZScott).then_some(&ctx.o_z);
            scott_type(y, o_z, k, budget, exec)
        });
        let [a, b, c, d] = hyper;
        let hyper = [a?, b?, c?, d?];
        let mut named = vec![
            kset_topology_in(&ctx, Compactness::Plain)?,
            kset_topology_in(&ctx, Compactness::ZRelative)?,
        ];
        for h in &hyper {
            named.push(lift_open_family(h, &ctx.maps)?);
        }
        Ok(PairFacts { ctx, hyper, named })
    }

    pub fn get(&self, kind: FnKind) -> &FnTopology {
        let i = FnKind::NAMED
            .iter()
            .position(|&k| k == kind)
            .expect("named kind");
        &self.named[i]
    }
}

fn admissible(t: &FnTopology) -> bool {
    evaluation_failure(t.maps(), t.space()).is_none()
}

fn t_i(s: &Separation, i: usize) -> bool {
    match i {
        0 => s.t0,
        1 => s.t1,
        _ => s.t2,
    }
}

/// Random refinement of `space`: its minimal neighbourhoods plus one to
/// three random subsets generate the new topology.
fn refine(space: &FinSpace, rng: &mut ChaCha8Rng) -> FinSpace {
    let n = space.size();
    let extra = rng.gen_range(1..=3);
    let mut subbasis = space.neighborhoods().to_vec();
    for _ in 0..extra {
        let bits: u64 = rng.gen();
        subbasis.push(Subset::from_bits(bits as u32) & Subset::full(n));
    }
    from_subbasis_iter(n, subbasis)
}

/// Draws `samples` random refinements of `t` and checks that each stays
/// admissible whenever `t` is.
pub fn monotonicity_check(t: &FnTopology, samples: usize, seed: u64) -> VerdictReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = admissible(t);
    let mut report = VerdictReport::new(
        "refinements of an admissible topology are admissible",
        json!({"samples": samples, "seed": seed}),
    );
    let mut strict = 0;
    for _ in 0..samples {
        let finer = refine(t.space(), &mut rng);
        debug_assert!(is_coarser(t.space(), &finer));
        if finer != *t.space() {
            strict += 1;
        }
        report.instance_count += 1;
        if base {
            report.hypothesis_true_count += 1;
            if let Some(w) = evaluation_failure(t.maps(), &finer) {
                report.push_witness(json!({
                    "refinement": finer.opens().members(),
                    "evaluation": w,
                }));
            }
        }
    }
    if report.hypothesis_true_count == 0 {
        report.status = Status::Inconclusive;
    }
    report.with_details(json!({
        "y": space_value(t.y()),
        "z": space_value(t.z()),
        "kind": t.kind(),
        "base_admissible": base,
        "strict_refinements": strict,
    }))
}

const GRID: [(&str, FnKind, FnKind); 6] = [
    ("t_co is coarser than t_co^Z", FnKind::Co, FnKind::CoZ),
    ("t_co is coarser than t_Is", FnKind::Co, FnKind::Isbell),
    (
        "t_Is is coarser than t_sIs",
        FnKind::Isbell,
        FnKind::StrongIsbell,
    ),
    ("t_co^Z is coarser than t_1^Z", FnKind::CoZ, FnKind::T1Z),
    ("t_Is is coarser than t_1^Z", FnKind::Isbell, FnKind::T1Z),
    (
        "t_sIs is coarser than t_1s^Z",
        FnKind::StrongIsbell,
        FnKind::T1SZ,
    ),
];

const T_I: [&str; 3] = [
    "Z T0 => t_co^Z, t_1^Z, t_1s^Z are T0",
    "Z T1 => t_co^Z, t_1^Z, t_1s^Z are T1",
    "Z T2 => t_co^Z, t_1^Z, t_1s^Z are T2",
];

/// The hypotheses of the dual-topology theorem with the kinds each covers.
const DUAL_HYPOTHESES: [(&str, &str, &str, &[FnKind]); 3] = [
    (
        "Y regular locally (Z-)compact => tau(t) admissible for t_co^Z, t_1^Z, t_1s^Z",
        "Y regular locally (Z-)compact => t(tau(t)) admissible for t_co^Z, t_1^Z, t_1s^Z",
        "Y regular locally (Z-)compact => tau(t(tau(t))) admissible for t_co^Z, t_1^Z, t_1s^Z",
        &[FnKind::CoZ, FnKind::T1Z, FnKind::T1SZ],
    ),
    (
        "Y (Z-)corecompact => tau(t) admissible for t_1^Z, t_1s^Z",
        "Y (Z-)corecompact => t(tau(t)) admissible for t_1^Z, t_1s^Z",
        "Y (Z-)corecompact => tau(t(tau(t))) admissible for t_1^Z, t_1s^Z",
        &[FnKind::T1Z, FnKind::T1SZ],
    ),
    (
        "Y locally (Z-)bounded => tau(t) admissible for t_1s^Z",
        "Y locally (Z-)bounded => t(tau(t)) admissible for t_1s^Z",
        "Y locally (Z-)bounded => tau(t(tau(t))) admissible for t_1s^Z",
        &[FnKind::T1SZ],
    ),
];

fn pair_outcomes(y: &FinSpace, z: &FinSpace, opts: &SuiteOptions) -> Result<Outcomes> {
    let budget = Budget::default();
    let exec = Execution::Sequential;
    let facts = PairFacts::new(y, z, &budget, exec)?;
    let ctx = &facts.ctx;
    let maps = &ctx.maps;
    let mut out = Outcomes::default();

    let plain = local_profile_with(y, budget.cover_opens);
    let rel = ctx.profile()?;
    let z_sep = separation_profile(z);
    let adm: Vec<bool> = facts.named.iter().map(admissible).collect();
    let adm_of = |k: FnKind| adm[FnKind::NAMED.iter().position(|&n| n == k).unwrap()];
    let facts_ref = &facts;
    let eval_witness = move |k: FnKind| move || json!({ "kind": k, "evaluation": evaluation_failure(maps, facts_ref.get(k).space()) });

    // Classical admissibility results.
    let reg_lc = plain.separation.regular && plain.locally_compact;
    out.record(
        "Y regular locally compact => t_co admissible",
        reg_lc,
        adm_of(FnKind::Co),
        eval_witness(FnKind::Co),
    );
    out.record(
        "Y corecompact => t_Is admissible",
        plain.corecompact,
        adm_of(FnKind::Isbell),
        eval_witness(FnKind::Isbell),
    );
    out.record(
        "Y locally bounded => t_sIs admissible",
        plain.locally_bounded,
        adm_of(FnKind::StrongIsbell),
        eval_witness(FnKind::StrongIsbell),
    );
    out.record(
        "Y regular locally compact => t_co^Z, t_1^Z, t_1s^Z admissible",
        reg_lc,
        adm_of(FnKind::CoZ) && adm_of(FnKind::T1Z) && adm_of(FnKind::T1SZ),
        || json!({"co_z": adm_of(FnKind::CoZ), "t1z": adm_of(FnKind::T1Z), "t1sz": adm_of(FnKind::T1SZ)}),
    );
    out.record(
        "Y corecompact => t_1^Z, t_1s^Z admissible",
        plain.corecompact,
        adm_of(FnKind::T1Z) && adm_of(FnKind::T1SZ),
        || json!({"t1z": adm_of(FnKind::T1Z), "t1sz": adm_of(FnKind::T1SZ)}),
    );
    out.record(
        "Y locally bounded => t_1s^Z admissible",
        plain.locally_bounded,
        adm_of(FnKind::T1SZ),
        eval_witness(FnKind::T1SZ),
    );

    // Relative admissibility theorems.
    out.record(
        "Y regular locally Z-compact => t_co^Z admissible",
        rel.regular_locally_z_compact,
        adm_of(FnKind::CoZ),
        eval_witness(FnKind::CoZ),
    );
    out.record(
        "Y locally Z-bounded => t_1s^Z admissible",
        rel.locally_z_bounded,
        adm_of(FnKind::T1SZ),
        eval_witness(FnKind::T1SZ),
    );
    out.record(
        "Y Z-corecompact => t_1^Z admissible",
        rel.z_corecompact,
        adm_of(FnKind::T1Z),
        eval_witness(FnKind::T1Z),
    );

    // Separation is inherited by the relative function spaces.
    for (i, claim) in T_I.iter().enumerate() {
        let seps: Vec<bool> = [FnKind::CoZ, FnKind::T1Z, FnKind::T1SZ]
            .iter()
            .map(|&k| t_i(&separation_profile(facts.get(k).space()), i))
            .collect();
        out.record(
            claim,
            t_i(&z_sep, i),
            seps.iter().all(|&b| b),
            || json!({"co_z": seps[0], "t1z": seps[1], "t1sz": seps[2]}),
        );
    }

    // Inclusion grid.
    for (claim, a, b) in GRID {
        let c = compare_spaces(facts.get(a).space(), facts.get(b).space())?;
        let ok = matches!(c.relation, Relation::Equal | Relation::ACoarser);
        out.fact(claim, ok, || json!({"only_in_finer_side": c.only_in_a}));
    }
    let rel_1 = compare_spaces(
        facts.get(FnKind::T1Z).space(),
        facts.get(FnKind::T1SZ).space(),
    )?;
    out.note("t_1^Z vs t_1s^Z", format!("{:?}", rel_1.relation));
    let h_rel = compare_spaces(facts.hyper[2].space(), facts.hyper[3].space())?;
    out.note("tau_1^Z vs tau_1s^Z", format!("{:?}", h_rel.relation));

    // Hyperspace facts.
    let [scott, strong, zs, szs] = &facts.hyper;
    out.fact(
        "scott is coarser than strong scott",
        is_coarser(scott.space(), strong.space()),
        || json!({}),
    );
    out.fact(
        "scott is coarser than Z-scott",
        is_coarser(scott.space(), zs.space()),
        || json!({}),
    );
    out.fact(
        "strong scott is coarser than strong Z-scott",
        is_coarser(strong.space(), szs.space()),
        || json!({}),
    );
    let mut h_k_open = true;
    let mut first_bad = None;
    for k in Subset::all(y.size()) {
        let fam = up_family(y, k, UpMode::Containment)?;
        if !zs.is_open_family(&fam)? {
            h_k_open = false;
            first_bad.get_or_insert(k);
        }
    }
    out.fact(
        "H_K is Z-scott open for every K",
        h_k_open,
        || json!({"k": first_bad}),
    );

    // Sierpiński identities.
    let is_s = *z == FinSpace::sierpinski();
    out.record(
        "Z = S => Z-topology equals the topology of Y",
        is_s,
        ctx.z_top == *y,
        || json!({}),
    );
    for (claim, a, b) in [
        ("Z = S => t_co^S = t_co", FnKind::CoZ, FnKind::Co),
        ("Z = S => t_1^S = t_Is", FnKind::T1Z, FnKind::Isbell),
        (
            "Z = S => t_1s^S = t_sIs",
            FnKind::T1SZ,
            FnKind::StrongIsbell,
        ),
    ] {
        out.record(
            claim,
            is_s,
            facts.get(a).space() == facts.get(b).space(),
            || json!({}),
        );
    }
    out.record(
        "Z = S => Z-scott = scott and strong Z-scott = strong scott",
        is_s,
        zs.space() == scott.space() && szs.space() == strong.space(),
        || json!({}),
    );
    if is_s {
        let homeo = sierpinski_homeomorphism(y, maps, facts.get(FnKind::CoZ), &budget)?;
        out.fact(
            "Z = S => characteristic maps carry t_co^S onto the <K> topology",
            homeo,
            || json!({}),
        );
    }

    // Dual topologies.
    for (i, k) in FnKind::NAMED.iter().enumerate() {
        let t = &facts.named[i];
        let tau = tau_of_t(t)?;
        let tt = t_of_tau(&tau, maps)?;
        let tau_adm = admissible(&tt);
        out.fact(
            "t admissible <=> tau(t) admissible",
            adm[i] == tau_adm,
            || json!({"kind": k, "t": adm[i], "tau": tau_adm}),
        );
        let ttau = tau_of_t(&tt)?;
        let ttt = t_of_tau(&ttau, maps)?;
        out.fact(
            "tau(t) admissible <=> t(tau(t)) admissible",
            tau_adm == admissible(&ttt),
            || json!({"kind": k, "tau": tau_adm}),
        );
        let direct = is_admissible_on_ozy_with(
            &tau,
            maps,
            AdmissibilityMode::DirectBounded {
                max_x: opts.direct_max_x,
            },
            exec,
        )?;
        out.fact(
            "direct search on O_Z(Y) never contradicts the dual criterion",
            !(direct.fails() && tau_adm),
            || json!({"kind": k, "direct": direct.witnesses}),
        );
    }
    let reg_any = reg_lc || rel.regular_locally_z_compact;
    let core_any = plain.corecompact || rel.z_corecompact;
    let bounded_any = plain.locally_bounded || rel.locally_z_bounded;
    for ((c1, c2, c3, kinds), hyp) in DUAL_HYPOTHESES.iter().zip([reg_any, core_any, bounded_any]) {
        let mut levels = [true; 3];
        for &k in kinds.iter() {
            let tau = tau_of_t(facts.get(k))?;
            let t2 = t_of_tau(&tau, maps)?;
            let tau2 = tau_of_t(&t2)?;
            let t3 = t_of_tau(&tau2, maps)?;
            let direct = is_admissible_on_ozy_with(
                &tau,
                maps,
                AdmissibilityMode::DirectBounded {
                    max_x: opts.direct_max_x,
                },
                exec,
            )?;
            levels[0] &= admissible(&t2) && !direct.fails();
            levels[1] &= admissible(&t2);
            levels[2] &= admissible(&t3);
        }
        out.record(c1, hyp, levels[0], || json!({}));
        out.record(c2, hyp, levels[1], || json!({}));
        out.record(c3, hyp, levels[2], || json!({}));
    }

    // Monotonicity along refinement.
    let pair_seed = opts.seed ^ hash_pair(y, z);
    for (i, t) in facts.named.iter().enumerate() {
        if !adm[i] || facts.named[..i].iter().any(|s| s.space() == t.space()) {
            continue;
        }
        let r = monotonicity_check(t, opts.monotone_samples, pair_seed.wrapping_add(i as u64));
        for _ in 0..r.hypothesis_true_count {
            out.fact(
                "t admissible and t coarser than t' => t' admissible",
                true,
                || json!({}),
            );
        }
        if r.fails() {
            out.fact(
                "t admissible and t coarser than t' => t' admissible",
                false,
                || json!(r.witnesses),
            );
        }
    }

    // Splitting: known positive cases and the ordering against admissible
    // topologies.
    let split = SplitOptions {
        max_x: opts.split_max_x,
        reduce: true,
        exec,
    };
    let mut not_refuted: Vec<&FnTopology> = Vec::new();
    for (i, t) in facts.named.iter().enumerate() {
        let (w, _) = splitting_failure(maps, t.space(), split)?;
        if i == 0 {
            out.fact("t_co has no splitting counterexample", w.is_none(), || {
                json!(w.as_ref().map(|w| w.to_json(maps)))
            });
        }
        if i == 2 {
            out.fact("t_Is has no splitting counterexample", w.is_none(), || {
                json!(w.as_ref().map(|w| w.to_json(maps)))
            });
        }
        if w.is_none() {
            not_refuted.push(t);
        }
    }
    let discrete = FinSpace::discrete(maps.len());
    let mut admissible_spaces: Vec<&FinSpace> = facts
        .named
        .iter()
        .zip(&adm)
        .filter(|(_, &a)| a)
        .map(|(t, _)| t.space())
        .collect();
    admissible_spaces.push(&discrete);
    for t in &not_refuted {
        for &s in &admissible_spaces {
            out.fact(
                "no splitting counterexample for t and t' admissible => t coarser than t'",
                is_coarser(t.space(), s),
                || json!({"t": t.kind(), "t_prime": s.opens().members()}),
            );
        }
    }

    // Composition theorem over triples (X, Y, Z).
    for x in spaces_up_to(opts.compose_max_x, false, exec)? {
        let xy = ZContext::new(&x, y, &budget)?;
        let xz = ZContext::new(&x, z, &budget)?;
        let a = named_in(&xy, FnKind::CoZ, exec)?;
        let c = named_in(&xz, FnKind::CoZ, exec)?;
        let hit = composition_failure(&a, facts.get(FnKind::CoZ), &c);
        out.record(
            "Y locally Z-compact => composition continuous for t_co^Y, t_co^Z, t_co^Z",
            rel.locally_z_compact,
            hit.is_none(),
            || json!({"x": space_value(&x), "pairs": hit}),
        );
    }

    Ok(out)
}

fn hash_pair(y: &FinSpace, z: &FinSpace) -> u64 {
    use std::hash::{Hash, Hasher};
    // FNV-1a over the neighbourhood bits keeps seeds stable across runs.
    struct Fnv(u64);
    impl Hasher for Fnv {
        fn finish(&self) -> u64 {
            self.0
        }
        fn write(&mut self, bytes: &[u8]) {
            for &b in bytes {
                self.0 = (self.0 ^ u64::from(b)).wrapping_mul(0x100000001b3);
            }
        }
    }
    let mut h = Fnv(0xcbf29ce484222325);
    y.hash(&mut h);
    z.hash(&mut h);
    h.finish()
}

/// `χ_V ↦ V` is a homeomorphism from `C_{t_co^S}(Y,S)` onto `O(Y)` with
/// the `⟨K⟩` topology: every open maps to an open and back.
fn sierpinski_homeomorphism(
    y: &FinSpace,
    maps: &Arc<MapSet>,
    t: &FnTopology,
    budget: &Budget,
) -> Result<bool> {
    let h = compact_subbasis_topology_with(y, budget)?;
    let to_open: Vec<usize> = (0..maps.len())
        .map(|f| {
            let v = maps.get(f).preimage(Subset::singleton(1));
            debug_assert_eq!(characteristic_table(y.size(), v), maps.get(f).table());
            h.ground_index(v).ok_or(TopoError::NotOpen(v))
        })
        .collect::<Result<_>>()?;
    let mut seen = to_open.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != h.ground().len() || to_open.len() != h.ground().len() {
        return Ok(false);
    }
    let image = |s: Subset| Subset::from_points(s.points().map(|f| to_open[f]));
    let forward = t.opens().iter().all(|&u| h.space().is_open(image(u)));
    let backward = h.opens().iter().all(|&w| {
        let pre = Subset::from_points((0..maps.len()).filter(|&f| w.contains(to_open[f])));
        t.is_open(pre)
    });
    Ok(forward && backward)
}

pub fn theorem_suite(max_y: usize, max_z: usize) -> Result<Vec<VerdictReport>> {
    theorem_suite_with(&SuiteOptions::new(max_y, max_z))
}

pub fn theorem_suite_with(opts: &SuiteOptions) -> Result<Vec<VerdictReport>> {
    if opts.max_y > 3 || opts.max_z > 3 {
        return Err(TopoError::BudgetExceeded(format!(
            "theorem suite over |Y| <= {}, |Z| <= {} (limit 3, 3)",
            opts.max_y, opts.max_z
        )));
    }
    let ys = spaces_up_to(opts.max_y, false, opts.exec)?;
    let zs = spaces_up_to(opts.max_z, false, opts.exec)?;
    let pairs: Vec<(FinSpace, FinSpace)> = ys
        .iter()
        .flat_map(|y| zs.iter().map(move |z| (y.clone(), z.clone())))
        .collect();
    aggregate(&pairs, opts, |_| true)
}

/// The claims specific to `Z = S`, over every `Y` with at most `max_y`
/// points.
pub fn sierpinski_suite(max_y: usize, exec: Execution) -> Result<Vec<VerdictReport>> {
    let mut opts = SuiteOptions::new(max_y, 2);
    opts.exec = exec;
    let pairs: Vec<(FinSpace, FinSpace)> = spaces_up_to(max_y, false, exec)?
        .into_iter()
        .map(|y| (y, FinSpace::sierpinski()))
        .collect();
    aggregate(&pairs, &opts, |claim| claim.starts_with("Z = S"))
}

fn aggregate(
    pairs: &[(FinSpace, FinSpace)],
    opts: &SuiteOptions,
    keep: impl Fn(&str) -> bool,
) -> Result<Vec<VerdictReport>> {
    let results = par::map(opts.exec, pairs, |(y, z)| pair_outcomes(y, z, opts));
    let budget = serde_json::to_value(opts).expect("options serialize");

    let mut reports: Vec<VerdictReport> = Vec::new();
    let mut notes: std::collections::BTreeMap<String, std::collections::BTreeMap<String, usize>> =
        Default::default();
    for ((y, z), outcomes) in pairs.iter().zip(results) {
        let outcomes = outcomes?;
        for o in outcomes.list.into_iter().filter(|o| keep(o.claim)) {
            let pos = match reports.iter().position(|r| r.claim == o.claim) {
                Some(p) => p,
                None => {
                    reports.push(VerdictReport::new(o.claim, budget.clone()));
                    reports.len() - 1
                }
            };
            let r = &mut reports[pos];
            r.instance_count += 1;
            if o.hypothesis {
                r.hypothesis_true_count += 1;
            }
            if !o.holds {
                r.status = Status::Fails;
                if r.witnesses.len() < 10 {
                    r.witnesses.push(json!({
                        "y": space_value(y),
                        "z": space_value(z),
                        "detail": o.witness,
                    }));
                }
            }
        }
        for (key, value) in outcomes.notes {
            *notes
                .entry(key.to_string())
                .or_default()
                .entry(value)
                .or_default() += 1;
        }
    }
    for r in &mut reports {
        if r.status == Status::Holds && r.hypothesis_true_count == 0 {
            r.status = Status::Inconclusive;
        }
    }
    if !keep("relation") {
        return Ok(reports);
    }
    let mut relation = VerdictReport::new(
        "relation between t_1^Z and t_1s^Z (reported, not asserted)",
        budget,
    );
    relation.status = Status::Inconclusive;
    relation.instance_count = pairs.len();
    relation.details = Some(json!(notes));
    reports.push(relation);
    Ok(reports)
}

/// Permanent regression reports for the two places where the literal
/// definitions disagree with the worked example and the inclusion diagram
/// for hyperspace topologies. Both are evaluated at `Y` = 2-point chain,
/// `Z` = indiscrete 2-point space.
pub fn diagram_regressions() -> Result<Vec<VerdictReport>> {
    let y = FinSpace::chain2();
    let z = FinSpace::indiscrete(2);
    let ctx = ZContext::new(&y, &z, &Budget::default())?;
    let zs = scott_type(
        &y,
        Some(&ctx.o_z),
        HyperKind::ZScott,
        &ctx.budget,
        Execution::Sequential,
    )?;
    let szs = scott_type(
        &y,
        Some(&ctx.o_z),
        HyperKind::StrongZScott,
        &ctx.budget,
        Execution::Sequential,
    )?;
    let instance = json!({"y": space_value(&y), "z": space_value(&z)});

    let mut inclusion = VerdictReport::new(
        "Z-scott topology is contained in the strong Z-scott topology",
        json!({"instance": "chain2 x indiscrete2"}),
    );
    inclusion.instance_count = 1;
    inclusion.hypothesis_true_count = 1;
    let c = compare_spaces(zs.space(), szs.space())?;
    for &mask in &c.only_in_a {
        let family = zs.decode(mask);
        debug_assert!(zs.is_open_family(&family)? && !szs.is_open_family(&family)?);
        inclusion.push_witness(json!({
            "family": family,
            "z_scott_open": true,
            "strong_z_scott_open": false,
            "reason": "the cover {Y} has no finite subfamily with union in the family",
        }));
    }
    let inclusion = inclusion.with_details(json!({
        "instance": instance,
        "divergence": "the inclusion diagram for the four hyperspace topologies asserts a vertical \
                       inclusion here and the worked example asserts equality; the literal \
                       definitions give a family open in one and not the other",
        "z_scott": zs.opens().iter().map(|&m| zs.decode(m)).collect::<Vec<_>>(),
        "strong_z_scott": szs.opens().iter().map(|&m| szs.decode(m)).collect::<Vec<_>>(),
    }));

    let listed = vec![Subset::EMPTY, y.full()];
    let mut example = VerdictReport::new(
        "family {{}, Y} listed for the Z-scott topology satisfies the upward closure condition",
        json!({"instance": "chain2 x indiscrete2"}),
    );
    example.instance_count = 1;
    example.hypothesis_true_count = 1;
    if !zs.is_open_family(&listed)? {
        example.push_witness(json!({
            "family": listed,
            "member": Subset::EMPTY,
            "member_in_o_z": ctx.o_z.contains(Subset::EMPTY),
            "superset_missing": Subset::singleton(0),
        }));
    }
    let example = example.with_details(json!({
        "instance": instance,
        "divergence": "the worked example lists this family, but the empty set belongs to it and \
                       to O_Z(Y) while its superset {0} does not belong to it",
    }));
    Ok(vec![inclusion, example])
}
