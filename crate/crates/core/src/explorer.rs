//! Bounded searches over enumerated space pairs for finite witnesses to
//! open questions about the relative function-space topologies.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::checkers::{composition_check_with, splitting_failure, PairFacts, SplitOptions};
use crate::error::{Result, TopoError};
use crate::finspace::{separation_profile, spaces_up_to, FinSpace};
use crate::fntop::{compare_spaces, FnKind, Relation};
use crate::json::space_value;
use crate::par::{self, Execution};
use crate::report::{Status, VerdictReport};

/// Largest `|Y|`, `|Z|` (and `|X|` for composition probes) accepted.
pub const MAX_PROBE_POINTS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum QuestionId {
    #[serde(rename = "q1")]
    Q1,
    #[serde(rename = "q2")]
    Q2,
    #[serde(rename = "q3.1")]
    Q3_1,
    #[serde(rename = "q3.2")]
    Q3_2,
    #[serde(rename = "q3.3")]
    Q3_3,
    #[serde(rename = "q4")]
    Q4,
    #[serde(rename = "q5")]
    Q5,
    #[serde(rename = "q6")]
    Q6,
    #[serde(rename = "q7")]
    Q7,
    #[serde(rename = "q8")]
    Q8,
    #[serde(rename = "q9")]
    Q9,
    #[serde(rename = "q10")]
    Q10,
    #[serde(rename = "q11")]
    Q11,
    #[serde(rename = "q12")]
    Q12,
}

impl QuestionId {
    pub const ALL: [QuestionId; 14] = [
        QuestionId::Q1,
        QuestionId::Q2,
        QuestionId::Q3_1,
        QuestionId::Q3_2,
        QuestionId::Q3_3,
        QuestionId::Q4,
        QuestionId::Q5,
        QuestionId::Q6,
        QuestionId::Q7,
        QuestionId::Q8,
        QuestionId::Q9,
        QuestionId::Q10,
        QuestionId::Q11,
        QuestionId::Q12,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            QuestionId::Q1 => "q1",
            QuestionId::Q2 => "q2",
            QuestionId::Q3_1 => "q3.1",
            QuestionId::Q3_2 => "q3.2",
            QuestionId::Q3_3 => "q3.3",
            QuestionId::Q4 => "q4",
            QuestionId::Q5 => "q5",
            QuestionId::Q6 => "q6",
            QuestionId::Q7 => "q7",
            QuestionId::Q8 => "q8",
            QuestionId::Q9 => "q9",
            QuestionId::Q10 => "q10",
            QuestionId::Q11 => "q11",
            QuestionId::Q12 => "q12",
        }
    }

    pub fn summary(self) -> &'static str {
        match self {
            QuestionId::Q1 => "is t_1^Z regular whenever Z is regular",
            QuestionId::Q2 => "is t_1^Z completely regular whenever Z is completely regular",
            QuestionId::Q3_1 => "find Y, Z with t_co^Z != t_co",
            QuestionId::Q3_2 => "find Y, Z with t_1^Z != t_Is",
            QuestionId::Q3_3 => "find Y, Z with t_1s^Z != t_sIs",
            QuestionId::Q4 => "do t_co and t_co^Z agree on C(R^omega, R)",
            QuestionId::Q5 => "do t_co and t_co^Z agree on C(N^omega, N)",
            QuestionId::Q6 => {
                "is composition continuous for t_1s topologies when Y is locally Z-bounded"
            }
            QuestionId::Q7 => {
                "is composition continuous for t_1 topologies when Y is Z-corecompact"
            }
            QuestionId::Q8 => "when is t_1^Z splitting",
            QuestionId::Q9 => "when is t_co^Z splitting",
            QuestionId::Q10 => {
                "compare t_co, t_Is, t_sIs with their relative versions for discrete Z = {0,1}"
            }
            QuestionId::Q11 => "compare the same pairs for Z a convergent sequence",
            QuestionId::Q12 => "for which Y, Z does t_1^Z = t_co^Z hold",
        }
    }

    /// Reason a question has no finite probe, if it has none.
    pub fn out_of_scope(self) -> Option<&'static str> {
        match self {
            QuestionId::Q2 => Some("complete regularity needs real-valued separating functions"),
            QuestionId::Q4 => Some("R^omega is not finitely representable"),
            QuestionId::Q5 => Some("N^omega is not finitely representable"),
            QuestionId::Q11 => Some(
                "the convergent-sequence space is infinite and its finite truncations are discrete",
            ),
            _ => None,
        }
    }
}

impl fmt::Display for QuestionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for QuestionId {
    type Err = TopoError;

    fn from_str(s: &str) -> Result<Self> {
        QuestionId::ALL
            .into_iter()
            .find(|q| q.as_str() == s)
            .ok_or_else(|| TopoError::UnknownQuestion(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    /// A finite instance answers the question.
    WitnessFound,
    /// Nothing found within the bounds; larger spaces are not excluded.
    NoWitnessAtBounds,
    /// Nothing found, and an encoded argument excludes every finite pair.
    NoFiniteWitness,
    /// The question asks for a characterization; the probe tabulates data.
    Tabulated,
    OutOfScope,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bounds {
    pub max_x: Option<usize>,
    pub max_y: usize,
    pub max_z: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuestionProbe {
    pub id: QuestionId,
    pub question: &'static str,
    pub bounds: Bounds,
    pub conclusion: Conclusion,
    pub explanation: Option<String>,
    pub result: Vec<VerdictReport>,
    /// One record per tested instance, with the spaces inlined so any row
    /// can be replayed on its own.
    pub instances: Vec<Value>,
}

const EQUAL_COLLAPSE: &str = "every subset of a finite space is compact, Z-compact, bounded and \
    Z-bounded, so the compact-open and Z-compact-open subbases coincide; the (H,U) sets of \
    Scott-type families are unions of (K,U) sets because a Z-scott open family contains the \
    members of O_Z(Y) above each of its members, and each (K,U) equals (H_K,U) for the open \
    family H_K of opens containing K; hence all six topologies on C(Y,Z) coincide for finite Y";

fn collapse_explanation(id: QuestionId) -> String {
    let tail = match id {
        QuestionId::Q3_1 => "in particular t_co^Z = t_co",
        QuestionId::Q3_2 => "in particular t_1^Z = t_Is",
        QuestionId::Q3_3 => "in particular t_1s^Z = t_sIs",
        QuestionId::Q10 => "in particular all three relations are false for Z = {0,1} discrete",
        _ => "in particular t_1^Z = t_co^Z for every finite pair",
    };
    format!("{EQUAL_COLLAPSE}; {tail}")
}

fn pairs(max_y: usize, max_z: usize, exec: Execution) -> Result<Vec<(FinSpace, FinSpace)>> {
    let ys = spaces_up_to(max_y, false, exec)?;
    let zs = spaces_up_to(max_z, false, exec)?;
    Ok(ys
        .iter()
        .flat_map(|y| zs.iter().map(move |z| (y.clone(), z.clone())))
        .collect())
}

pub fn question_search(id: QuestionId, max_y: usize, max_z: usize) -> Result<QuestionProbe> {
    question_search_with(id, max_y, max_z, Execution::default())
}

pub fn question_search_with(
    id: QuestionId,
    max_y: usize,
    max_z: usize,
    exec: Execution,
) -> Result<QuestionProbe> {
    if max_y > MAX_PROBE_POINTS || max_z > MAX_PROBE_POINTS {
        return Err(TopoError::BudgetExceeded(format!(
            "question probes accept at most {MAX_PROBE_POINTS} points in Y and Z"
        )));
    }
    let mut probe = QuestionProbe {
        id,
        question: id.summary(),
        bounds: Bounds {
            max_x: None,
            max_y,
            max_z,
        },
        conclusion: Conclusion::NoWitnessAtBounds,
        explanation: None,
        result: Vec::new(),
        instances: Vec::new(),
    };
    if let Some(reason) = id.out_of_scope() {
        probe.conclusion = Conclusion::OutOfScope;
        probe.explanation = Some(reason.to_string());
        return Ok(probe);
    }
    let budget = json!({"max_y": max_y, "max_z": max_z});
    match id {
        QuestionId::Q1 => regularity(&mut probe, budget, exec)?,
        QuestionId::Q3_1 => equality(&mut probe, budget, &[(FnKind::CoZ, FnKind::Co)], None, exec)?,
        QuestionId::Q3_2 => equality(
            &mut probe,
            budget,
            &[(FnKind::T1Z, FnKind::Isbell)],
            None,
            exec,
        )?,
        QuestionId::Q3_3 => equality(
            &mut probe,
            budget,
            &[(FnKind::T1SZ, FnKind::StrongIsbell)],
            None,
            exec,
        )?,
        QuestionId::Q10 => {
            let z = FinSpace::discrete(2);
            let kinds = [
                (FnKind::Co, FnKind::CoZ),
                (FnKind::Isbell, FnKind::T1Z),
                (FnKind::StrongIsbell, FnKind::T1SZ),
            ];
            probe.bounds.max_z = 2;
            equality(
                &mut probe,
                json!({"max_y": max_y, "z": "discrete-2"}),
                &kinds,
                Some(z),
                exec,
            )?
        }
        QuestionId::Q12 => equality(
            &mut probe,
            budget,
            &[(FnKind::T1Z, FnKind::CoZ)],
            None,
            exec,
        )?,
        QuestionId::Q6 => composition(&mut probe, FnKind::T1SZ, "locally_z_bounded", exec)?,
        QuestionId::Q7 => composition(&mut probe, FnKind::T1Z, "z_corecompact", exec)?,
        QuestionId::Q8 => splitting(&mut probe, FnKind::T1Z, exec)?,
        QuestionId::Q9 => splitting(&mut probe, FnKind::CoZ, exec)?,
        QuestionId::Q2 | QuestionId::Q4 | QuestionId::Q5 | QuestionId::Q11 => unreachable!(),
    }
    Ok(probe)
}

fn regularity(probe: &mut QuestionProbe, budget: Value, exec: Execution) -> Result<()> {
    let all = pairs(probe.bounds.max_y, probe.bounds.max_z, exec)?;
    let rows = par::map(exec, &all, |(y, z)| -> Result<Value> {
        let facts = PairFacts::new(y, z, &Budget::default(), Execution::Sequential)?;
        let z_regular = separation_profile(z).regular;
        let t_regular = separation_profile(facts.get(FnKind::T1Z).space()).regular;
        Ok(json!({
            "y": space_value(y),
            "z": space_value(z),
            "topology": FnKind::T1Z,
            "z_regular": z_regular,
            "t1z_regular": t_regular,
        }))
    });
    let mut report = VerdictReport::new("Z regular => C(Y,Z) with t_1^Z is regular", budget);
    for row in rows {
        let row = row?;
        report.instance_count += 1;
        if row["z_regular"] == json!(true) {
            report.hypothesis_true_count += 1;
            if row["t1z_regular"] == json!(false) {
                report.push_witness(row.clone());
            }
        }
        probe.instances.push(row);
    }
    probe.conclusion = if report.fails() {
        Conclusion::WitnessFound
    } else {
        Conclusion::NoWitnessAtBounds
    };
    probe.explanation = Some(
        "regular means every open neighbourhood of a point contains a closed neighbourhood of it; \
         no separation axiom is implied"
            .to_string(),
    );
    probe.result.push(report);
    Ok(())
}

fn relation_name(r: Relation) -> &'static str {
    match r {
        Relation::Equal => "equal",
        Relation::ACoarser => "coarser",
        Relation::AFiner => "finer",
        Relation::Incomparable => "incomparable",
    }
}

fn equality(
    probe: &mut QuestionProbe,
    budget: Value,
    kinds: &[(FnKind, FnKind)],
    fixed_z: Option<FinSpace>,
    exec: Execution,
) -> Result<()> {
    let all = match &fixed_z {
        Some(z) => spaces_up_to(probe.bounds.max_y, false, exec)?
            .into_iter()
            .map(|y| (y, z.clone()))
            .collect(),
        None => pairs(probe.bounds.max_y, probe.bounds.max_z, exec)?,
    };
    let rows = par::map(exec, &all, |(y, z)| -> Result<Vec<Value>> {
        let facts = PairFacts::new(y, z, &Budget::default(), Execution::Sequential)?;
        kinds
            .iter()
            .map(|&(a, b)| {
                let c = compare_spaces(facts.get(a).space(), facts.get(b).space())?;
                Ok(json!({
                    "y": space_value(y),
                    "z": space_value(z),
                    "a": a,
                    "b": b,
                    "relation": relation_name(c.relation),
                    "only_in_a": c.only_in_a,
                    "only_in_b": c.only_in_b,
                }))
            })
            .collect()
    });
    let mut reports: Vec<VerdictReport> = kinds
        .iter()
        .map(|(a, b)| VerdictReport::new(format!("{a} != {b} on C(Y,Z)"), budget.clone()))
        .collect();
    for row in rows {
        for (i, r) in row?.into_iter().enumerate() {
            let report = &mut reports[i];
            report.instance_count += 1;
            report.hypothesis_true_count += 1;
            if r["relation"] != json!("equal") {
                report.witnesses.push(r.clone());
            }
            probe.instances.push(r);
        }
    }
    let found = reports.iter().any(|r| !r.witnesses.is_empty());
    // A witness answers the question, so the report status is holds when
    // one exists and inconclusive otherwise.
    for r in &mut reports {
        r.status = if r.witnesses.is_empty() {
            Status::Inconclusive
        } else {
            Status::Holds
        };
    }
    probe.result = reports;
    if found {
        probe.conclusion = Conclusion::WitnessFound;
    } else {
        probe.conclusion = Conclusion::NoFiniteWitness;
        probe.explanation = Some(collapse_explanation(probe.id));
    }
    Ok(())
}

fn composition(
    probe: &mut QuestionProbe,
    kind: FnKind,
    hypothesis: &'static str,
    exec: Execution,
) -> Result<()> {
    let max_x = probe.bounds.max_y;
    probe.bounds.max_x = Some(max_x);
    let xs = spaces_up_to(max_x, false, exec)?;
    let all = pairs(probe.bounds.max_y, probe.bounds.max_z, exec)?;
    let triples: Vec<(&FinSpace, &FinSpace, &FinSpace)> = xs
        .iter()
        .flat_map(|x| all.iter().map(move |(y, z)| (x, y, z)))
        .collect();
    let budget = Budget::default();
    let rows = par::map(exec, &triples, |&(x, y, z)| {
        composition_check_with(x, y, z, [kind; 3], &budget, Execution::Sequential)
    });
    let mut summary = VerdictReport::new(
        format!("Y {hypothesis} => composition continuous ({kind},{kind},{kind})"),
        json!({"max_x": max_x, "max_y": probe.bounds.max_y, "max_z": probe.bounds.max_z}),
    );
    let mut unconditional_failures = 0;
    for row in rows {
        let row = row?;
        let hyp = row.hypothesis_true_count > 0;
        summary.instance_count += 1;
        if hyp {
            summary.hypothesis_true_count += 1;
        }
        let details = row.details.clone().unwrap_or(Value::Null);
        if row.fails() {
            if hyp {
                summary.push_witness(json!({"instance": details, "witness": row.witnesses}));
            } else {
                unconditional_failures += 1;
            }
        }
        probe.instances.push(json!({
            "x": details["x"],
            "y": details["y"],
            "z": details["z"],
            "kinds": [kind, kind, kind],
            "hypothesis": hyp,
            "status": row.status,
        }));
    }
    if summary.hypothesis_true_count == 0 {
        summary.status = Status::Inconclusive;
    }
    probe.conclusion = if summary.fails() {
        Conclusion::WitnessFound
    } else {
        Conclusion::NoWitnessAtBounds
    };
    probe.explanation = Some(format!(
        "composition failed on {unconditional_failures} instances where the hypothesis is false"
    ));
    probe.result.push(summary);
    Ok(())
}

/// Splitting probes try every `X` with at most this many points.
pub const SPLIT_PROBE_MAX_X: usize = 3;

fn splitting(probe: &mut QuestionProbe, kind: FnKind, exec: Execution) -> Result<()> {
    probe.bounds.max_x = Some(SPLIT_PROBE_MAX_X);
    let all = pairs(probe.bounds.max_y, probe.bounds.max_z, exec)?;
    let rows = par::map(exec, &all, |(y, z)| -> Result<Value> {
        let facts = PairFacts::new(y, z, &Budget::default(), Execution::Sequential)?;
        let t = facts.get(kind);
        let opts = SplitOptions {
            max_x: SPLIT_PROBE_MAX_X,
            reduce: true,
            exec: Execution::Sequential,
        };
        let (w, tried) = splitting_failure(t.maps(), t.space(), opts)?;
        let sep = separation_profile(z);
        Ok(json!({
            "y": space_value(y),
            "z": space_value(z),
            "topology": kind,
            "z_t0": sep.t0,
            "z_t1": sep.t1,
            "z_regular": sep.regular,
            "z_discrete": z.is_discrete(),
            "z_indiscrete": z.is_indiscrete(),
            "z_sierpinski": z.size() == 2 && z.opens().len() == 3,
            "candidates_tried": tried,
            "status": if w.is_some() { "fails" } else { "inconclusive" },
            "witness": w.map(|w| w.to_json(t.maps())),
        }))
    });
    let mut report = VerdictReport::new(
        format!("{kind} is splitting on C(Y,Z)"),
        json!({"max_x": SPLIT_PROBE_MAX_X, "max_y": probe.bounds.max_y, "max_z": probe.bounds.max_z}),
    );
    for row in rows {
        let row = row?;
        report.instance_count += 1;
        report.hypothesis_true_count += 1;
        if row["status"] == json!("fails") {
            report.push_witness(row.clone());
        }
        probe.instances.push(row);
    }
    if !report.fails() {
        report.status = Status::Inconclusive;
    }
    probe.conclusion = Conclusion::Tabulated;
    probe.explanation = Some(format!(
        "bounded search refutes splitting only; {} of {} pairs were refuted. At finite scale {kind} \
         coincides with t_co, which is always splitting",
        report.witnesses.len(),
        report.instance_count
    ));
    probe.result.push(report);
    Ok(())
}
