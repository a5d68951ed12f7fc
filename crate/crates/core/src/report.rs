//! Verification reports: one claim per checked statement.

use serde::Serialize;
use serde_json::Value;

use crate::catalog::Source;
use crate::error::Error;
use crate::field::FieldSpec;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A search or enumeration budget ran out before the claim could be decided.
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub id: String,
    pub statement: String,
    pub source: Source,
    pub expected: Value,
    pub computed: Value,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub suite: String,
    pub status: Status,
    pub seed: u64,
    pub field: Option<FieldSpec>,
    pub claims: Vec<Claim>,
}

impl VerificationReport {
    pub fn new(suite: &str, seed: u64, field: Option<FieldSpec>) -> Self {
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            suite: suite.to_string(),
            status: Status::Pass,
            seed,
            field,
            claims: Vec::new(),
        }
    }

    fn push(&mut self, claim: Claim) {
        self.status = match (self.status, claim.status) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Inconclusive, _) | (_, Status::Inconclusive) => Status::Inconclusive,
            _ => Status::Pass,
        };
        self.claims.push(claim);
    }

    /// Records `computed == expected`.
    pub fn check<T: Serialize + PartialEq>(&mut self, id: &str, statement: &str, source: Source, expected: T, computed: T) {
        let status = if expected == computed { Status::Pass } else { Status::Fail };
        self.push(Claim {
            id: id.to_string(),
            statement: statement.to_string(),
            source,
            expected: to_value(&expected),
            computed: to_value(&computed),
            status,
        });
    }

    /// Records a computation that may fail; budget errors become inconclusive, others fail.
    pub fn check_result<T: Serialize + PartialEq>(
        &mut self,
        id: &str,
        statement: &str,
        source: Source,
        expected: T,
        computed: crate::Result<T>,
    ) {
        match computed {
            Ok(v) => self.check(id, statement, source, expected, v),
            Err(e) => self.error(id, statement, source, to_value(&expected), &e),
        }
    }

    pub fn error(&mut self, id: &str, statement: &str, source: Source, expected: Value, e: &Error) {
        let status = match e {
            Error::Budget(_) => Status::Inconclusive,
            _ => Status::Fail,
        };
        self.push(Claim {
            id: id.to_string(),
            statement: statement.to_string(),
            source,
            expected,
            computed: Value::String(format!("error: {e}")),
            status,
        });
    }

    /// Appends every claim of `other`, prefixing ids with its suite name.
    pub fn absorb(&mut self, other: VerificationReport) {
        for mut c in other.claims {
            c.id = format!("{}/{}", other.suite, c.id);
            self.push(c);
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| c.status != Status::Pass)
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}
