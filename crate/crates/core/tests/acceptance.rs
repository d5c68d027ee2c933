//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde_json::json;

use common::{generate, is_topology, literal_admissible, literal_maps, opens, Family};
use topolab_core::checkers::{
    diagram_regressions, evaluation_failure, monotonicity_check, sierpinski_suite,
    splitting_failure, theorem_suite, SplitOptions,
};
use topolab_core::duality::{t_of_tau, tau_of_t};
use topolab_core::explorer::{question_search, Conclusion, QuestionId};
use topolab_core::finspace::{enumerate_topologies, FinSpace, Subset};
use topolab_core::fntop::{
    compare_topologies, named_function_topology, FnKind, FnTopology, Relation,
};
use topolab_core::mapspace::enumerate_continuous;
use topolab_core::par::Execution;
use topolab_core::report::{Status, VerdictReport};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn report<'a>(reports: &'a [VerdictReport], claim: &str) -> Result<&'a VerdictReport, String> {
    reports
        .iter()
        .find(|r| r.claim == claim)
        .ok_or_else(|| format!("missing claim `{claim}`"))
}

fn holds_nonvacuous(reports: &[VerdictReport], claim: &str) -> Result<usize, String> {
    let r = report(reports, claim)?;
    ensure(
        r.status == Status::Holds,
        format!("`{claim}` is {:?}: {:?}", r.status, r.witnesses),
    )?;
    ensure(
        r.hypothesis_true_count > 0,
        format!("`{claim}` never had its hypothesis true"),
    )?;
    Ok(r.hypothesis_true_count)
}

fn topology_counts() -> Outcome {
    let mut counts = Vec::new();
    for n in 1..=4 {
        let lib = enumerate_topologies(n).map_err(|e| e.to_string())?;
        if n <= 3 {
            let subsets = 1usize << n;
            let filtered: BTreeSet<Vec<u32>> = (0u64..1 << subsets)
                .map(|code| {
                    (0..subsets as u32)
                        .filter(|&s| code >> s & 1 == 1)
                        .collect::<Family>()
                })
                .filter(|f| is_topology(n, f))
                .map(|f| f.into_iter().collect())
                .collect();
            let ours: BTreeSet<Vec<u32>> =
                lib.iter().map(|x| opens(x).into_iter().collect()).collect();
            ensure(
                ours == filtered,
                format!("n = {n} disagrees with the family filter"),
            )?;
        }
        counts.push(lib.len());
    }
    ensure(counts == [1, 4, 29, 355], format!("counts {counts:?}"))?;
    Ok(format!("counts {counts:?}"))
}

fn sierpinski_identities() -> Outcome {
    let reports = sierpinski_suite(3, Execution::default()).map_err(|e| e.to_string())?;
    ensure(
        reports.len() == 6,
        format!("{} Sierpinski claims", reports.len()),
    )?;
    for r in &reports {
        ensure(
            r.status == Status::Holds,
            format!("`{}` {:?}", r.claim, r.witnesses),
        )?;
        ensure(
            r.hypothesis_true_count == 34,
            format!("`{}` ran on {} spaces", r.claim, r.hypothesis_true_count),
        )?;
    }
    Ok("6 identities on 34 spaces".into())
}

const GRID: [&str; 6] = [
    "t_co is coarser than t_co^Z",
    "t_co is coarser than t_Is",
    "t_Is is coarser than t_sIs",
    "t_co^Z is coarser than t_1^Z",
    "t_Is is coarser than t_1^Z",
    "t_sIs is coarser than t_1s^Z",
];

fn comparison_grid() -> Outcome {
    let reports = theorem_suite(3, 2).map_err(|e| e.to_string())?;
    for claim in GRID {
        let n = holds_nonvacuous(&reports, claim)?;
        ensure(n == 170, format!("`{claim}` ran on {n} pairs"))?;
    }
    let regressions = diagram_regressions().map_err(|e| e.to_string())?;
    let inclusion = &regressions[0];
    ensure(
        inclusion.status == Status::Fails,
        "diagram regression lost its witness",
    )?;
    ensure(
        inclusion.witnesses.len() == 1,
        "expected one diagram witness",
    )?;
    ensure(
        inclusion.witnesses[0]["family"] == json!([[0]]),
        "witness family is not {{0}}",
    )?;
    ensure(
        inclusion.witnesses[0]["z_scott_open"] == json!(true),
        "witness not Z-scott open",
    )?;
    ensure(
        inclusion.witnesses[0]["strong_z_scott_open"] == json!(false),
        "witness strong Z-scott open",
    )?;
    let flagged = inclusion
        .details
        .as_ref()
        .is_some_and(|d| d["divergence"].is_string());
    ensure(flagged, "divergence not flagged")?;
    ensure(
        regressions[1].status == Status::Fails,
        "listed family {empty, Y} satisfies upward closure",
    )?;
    Ok("6 inclusions on 170 pairs; {{0}} regression recorded".into())
}

fn admissibility_theorems() -> Outcome {
    let reports = theorem_suite(3, 2).map_err(|e| e.to_string())?;
    let claims = [
        "Y regular locally Z-compact => t_co^Z admissible",
        "Y locally Z-bounded => t_1s^Z admissible",
        "Y Z-corecompact => t_1^Z admissible",
        "Z T0 => t_co^Z, t_1^Z, t_1s^Z are T0",
        "Z T1 => t_co^Z, t_1^Z, t_1s^Z are T1",
        "Z T2 => t_co^Z, t_1^Z, t_1s^Z are T2",
        "t admissible <=> tau(t) admissible",
        "tau(t) admissible <=> t(tau(t)) admissible",
    ];
    let mut counts = Vec::new();
    for claim in claims {
        counts.push(holds_nonvacuous(&reports, claim)?);
    }
    let failing: Vec<&str> = reports
        .iter()
        .filter(|r| r.fails())
        .map(|r| r.claim.as_str())
        .collect();
    ensure(failing.is_empty(), format!("failing claims {failing:?}"))?;
    Ok(format!("hypothesis counts {counts:?}"))
}

fn s(points: &[usize]) -> u32 {
    points.iter().fold(0, |acc, &p| acc | 1 << p)
}

fn point_regressions() -> Outcome {
    let sp = FinSpace::sierpinski();
    let co = named_function_topology(FnKind::Co, &sp, &sp).map_err(|e| e.to_string())?;
    let tables = co.maps().tables();
    ensure(tables == literal_maps(&sp, &sp), "C(S,S) order")?;
    ensure(
        tables == [vec![0, 0], vec![0, 1], vec![1, 1]],
        "C(S,S) is const0, id, const1",
    )?;
    let want: Family = [0, s(&[2]), s(&[1, 2]), s(&[0, 1, 2])].into();
    ensure(
        opens(co.space()) == want,
        format!("t_co(S,S) = {:?}", opens(co.space())),
    )?;

    let maps = co.maps().clone();
    let ind = FnTopology::indiscrete(maps.clone()).map_err(|e| e.to_string())?;
    let w = evaluation_failure(&maps, ind.space()).ok_or("indiscrete topology is admissible")?;
    ensure(
        w.w == Subset::singleton(1),
        format!("evaluation witness {:?}", w.w),
    )?;
    ensure(
        !literal_admissible(&sp, &sp, &tables, &opens(ind.space())),
        "oracle admits indiscrete",
    )?;

    let disc = FnTopology::discrete(maps.clone()).map_err(|e| e.to_string())?;
    let (hit, _) =
        splitting_failure(&maps, disc.space(), SplitOptions::new(2)).map_err(|e| e.to_string())?;
    let hit = hit.ok_or("discrete topology not refuted")?;
    ensure(hit.x == sp, "witness X is not S")?;
    ensure(hit.f == [0, 0, 0, 1], format!("witness F = {:?}", hit.f))?;
    revalidate_split(&sp, &sp, &sp, &hit.f, &tables, &opens(disc.space()))?;

    let tau = tau_of_t(&co).map_err(|e| e.to_string())?;
    ensure(
        tau.opens().len() == 6,
        format!("tau(t_co) has {} opens", tau.opens().len()),
    )?;
    let back = t_of_tau(&tau, &maps).map_err(|e| e.to_string())?;
    ensure(
        back.opens().len() == 6,
        format!("t(tau(t_co)) has {} opens", back.opens().len()),
    )?;
    let rel = compare_topologies(&back, &co)
        .map_err(|e| e.to_string())?
        .relation;
    ensure(
        rel == Relation::AFiner,
        format!("t(tau(t_co)) vs t_co: {rel:?}"),
    )?;
    Ok("all five regressions exact".into())
}

/// `F : X × Y → Z` is continuous for the product topology while `F̂` is
/// not continuous into the topology `t` on `C(Y,Z)`.
fn revalidate_split(
    x: &FinSpace,
    y: &FinSpace,
    z: &FinSpace,
    f: &[usize],
    tables: &[Vec<usize>],
    t: &Family,
) -> Result<(), String> {
    let ny = y.size();
    let rects = opens(x).into_iter().flat_map(|a| {
        opens(y).into_iter().map(move |v| {
            (0..x.size() * ny)
                .filter(|&i| a >> (i / ny) & 1 == 1 && v >> (i % ny) & 1 == 1)
                .fold(0u32, |acc, i| acc | 1 << i)
        })
    });
    let product = generate(x.size() * ny, rects);
    let f_cont = opens(z).into_iter().all(|u| {
        let pre = (0..f.len())
            .filter(|&i| u >> f[i] & 1 == 1)
            .fold(0u32, |acc, i| acc | 1 << i);
        product.contains(&pre)
    });
    ensure(f_cont, "witness F is not continuous")?;
    let hat: Vec<usize> = (0..x.size())
        .map(|p| {
            tables
                .iter()
                .position(|t| t[..] == f[p * ny..(p + 1) * ny])
                .unwrap()
        })
        .collect();
    let ox = opens(x);
    let hat_cont = t.iter().all(|&a| {
        let pre = (0..x.size())
            .filter(|&p| a >> hat[p] & 1 == 1)
            .fold(0u32, |acc, p| acc | 1 << p);
        ox.contains(&pre)
    });
    ensure(!hat_cont, "witness transpose is continuous")
}

fn monotonicity() -> Outcome {
    let mut bases = 0;
    let mut checked = 0;
    for (y, z) in [
        (FinSpace::sierpinski(), FinSpace::sierpinski()),
        (FinSpace::chain2(), FinSpace::discrete(2)),
    ] {
        let maps = Arc::new(enumerate_continuous(&y, &z).map_err(|e| e.to_string())?);
        let tables = maps.tables();
        for (i, kind) in FnKind::NAMED.iter().enumerate() {
            let t = named_function_topology(*kind, &y, &z).map_err(|e| e.to_string())?;
            if evaluation_failure(&maps, t.space()).is_some() {
                continue;
            }
            let r = monotonicity_check(&t, 100, 1000 + i as u64);
            ensure(
                r.status == Status::Holds,
                format!("{kind}: {:?}", r.witnesses),
            )?;
            ensure(
                r.hypothesis_true_count == 100,
                format!("{kind}: {} samples", r.hypothesis_true_count),
            )?;
            ensure(
                literal_admissible(&y, &z, &tables, &opens(t.space())),
                format!("oracle rejects {kind}"),
            )?;
            bases += 1;
            checked += r.hypothesis_true_count;
        }
    }
    ensure(bases > 0, "no admissible base topology")?;
    Ok(format!("{checked} refinements of {bases} bases"))
}

fn question_probes() -> Outcome {
    let mut summary = Vec::new();
    for id in [QuestionId::Q3_1, QuestionId::Q10, QuestionId::Q12] {
        let p = question_search(id, 3, 2).map_err(|e| e.to_string())?;
        ensure(
            p.conclusion == Conclusion::NoFiniteWitness,
            format!("{id}: {:?}", p.conclusion),
        )?;
        ensure(
            p.result.iter().all(|r| r.witnesses.is_empty()),
            format!("{id} has witnesses"),
        )?;
        ensure(
            p.explanation
                .as_ref()
                .is_some_and(|e| e.contains("compact")),
            format!("{id} lacks the collapse explanation"),
        )?;
        ensure(
            !p.instances.is_empty(),
            format!("{id} has no instance table"),
        )?;
        summary.push(format!("{id}:{}", p.instances.len()));
    }
    for id in [
        QuestionId::Q1,
        QuestionId::Q6,
        QuestionId::Q7,
        QuestionId::Q8,
        QuestionId::Q9,
    ] {
        let p = question_search(id, 3, 2).map_err(|e| e.to_string())?;
        ensure(
            !p.instances.is_empty(),
            format!("{id} has no instance table"),
        )?;
        let replayable = p
            .instances
            .iter()
            .all(|r| r["y"].is_object() && r["z"].is_object());
        ensure(replayable, format!("{id} rows lack the spaces"))?;
        summary.push(format!("{id}:{}({:?})", p.instances.len(), p.conclusion));
    }
    Ok(summary.join(" "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("topology counts", topology_counts, Duration::from_secs(10)),
        (
            "Sierpinski identities",
            sierpinski_identities,
            Duration::from_secs(60),
        ),
        (
            "comparison grid and diagram regression",
            comparison_grid,
            Duration::from_secs(300),
        ),
        (
            "admissibility theorem suite",
            admissibility_theorems,
            Duration::from_secs(600),
        ),
        (
            "point regressions",
            point_regressions,
            Duration::from_secs(5),
        ),
        (
            "monotonicity along refinement",
            monotonicity,
            Duration::from_secs(60),
        ),
        ("question probes", question_probes, Duration::from_secs(900)),
    ];
    let mut all_pass = true;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > limit => {
                Err(format!("{msg}; took {elapsed:.2?}, limit {limit:?}"))
            }
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS {} {name} ({elapsed:.2?}): {msg}", i + 1),
            Err(msg) => {
                all_pass = false;
                println!("FAIL {} {name} ({elapsed:.2?}): {msg}", i + 1);
            }
        }
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
