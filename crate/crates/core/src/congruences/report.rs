use std::time::Duration;

use serde::Serialize;

use crate::gring::ResidueGroupRing;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Kummer,
    Minus,
    Delta,
    Integrality,
    TEquality,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Failed,
    Skipped,
}

/// The two sides of a check, coefficientwise by group-element label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub labels: Vec<u64>,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

impl Witness {
    pub fn from_residues(lhs: &ResidueGroupRing, rhs: &ResidueGroupRing) -> Self {
        let group = lhs.group();
        Witness {
            labels: group.labels().to_vec(),
            lhs: lhs.values().iter().map(u64::to_string).collect(),
            rhs: rhs.values().iter().map(u64::to_string).collect(),
        }
    }

    /// Labels where the two sides differ.
    pub fn differing_labels(&self) -> Vec<u64> {
        self.labels
            .iter()
            .zip(self.lhs.iter().zip(&self.rhs))
            .filter(|(_, (a, b))| a != b)
            .map(|(&l, _)| l)
            .collect()
    }
}

/// One check's outcome. `elapsed` is kept for logging and never serialized.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CongruenceReport {
    pub check: CheckKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<u64>,
    pub p: u64,
    pub n: u32,
    pub j: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    pub s: Vec<u64>,
    pub t: Vec<u64>,
    pub epsilon: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CongruenceReport {
    pub(crate) fn new(check: CheckKind, p: u64, n: u32, j: i64) -> Self {
        CongruenceReport {
            check,
            f: None,
            p,
            n,
            j,
            k: None,
            s: Vec::new(),
            t: Vec::new(),
            epsilon: "1".into(),
            status: Status::Skipped,
            reason: None,
            witness: None,
            elapsed: Duration::ZERO,
        }
    }

    pub(crate) fn skip(mut self, reason: impl Into<String>) -> Self {
        self.status = Status::Skipped;
        self.reason = Some(reason.into());
        self
    }

    /// Verified iff both sides agree, failed otherwise.
    pub(crate) fn compare(mut self, witness: Witness) -> Self {
        self.status = if witness.lhs == witness.rhs {
            Status::Verified
        } else {
            Status::Failed
        };
        self.witness = Some(witness);
        self
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub verified: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(reports: &[CongruenceReport]) -> Self {
        let mut s = Summary::default();
        for r in reports {
            match r.status {
                Status::Verified => s.verified += 1,
                Status::Failed => s.failed += 1,
                Status::Skipped => s.skipped += 1,
            }
        }
        s
    }
}
