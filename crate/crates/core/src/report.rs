//! The outcome record shared by every checker and probe.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub claim: String,
    pub status: Status,
    /// Instances in which the claim's hypothesis held, so that a pass with
    /// a zero count is visibly vacuous.
    pub hypothesis_true_count: usize,
    pub instance_count: usize,
    /// Counterexamples; nonempty whenever `status` is `fails`.
    pub witnesses: Vec<Value>,
    pub budget: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
}

impl VerdictReport {
    pub fn new(claim: impl Into<String>, budget: Value) -> Self {
        VerdictReport {
            claim: claim.into(),
            status: Status::Holds,
            hypothesis_true_count: 0,
            instance_count: 0,
            witnesses: Vec::new(),
            budget,
            details: None,
        }
    }

    pub fn with_details(mut self, details: Value) -> Self {
        self.details = Some(details);
        self
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn fails(&self) -> bool {
        self.status == Status::Fails
    }

    /// Records a counterexample and flips the status to `fails`.
    pub fn push_witness(&mut self, witness: Value) {
        self.status = Status::Fails;
        self.witnesses.push(witness);
    }

    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Fails => 1,
            Status::Holds | Status::Inconclusive => 0,
        }
    }
}
