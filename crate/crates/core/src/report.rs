//! Structured pass/fail records, serializable as JSON or CSV.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub id: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub detail: String,
}

impl Case {
    pub fn new(id: impl Into<String>, status: Status) -> Self {
        Case { id: id.into(), status, lhs: String::new(), rhs: String::new(), detail: String::new() }
    }

    pub fn pass(id: impl Into<String>) -> Self {
        Self::new(id, Status::Pass)
    }

    pub fn fail(id: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(id, Status::Fail).detail(detail)
    }

    pub fn skip(id: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(id, Status::Skip).detail(detail)
    }

    /// Pass iff `ok`, recording both sides.
    pub fn check(id: impl Into<String>, ok: bool, lhs: impl ToString, rhs: impl ToString) -> Self {
        let mut c = Self::new(id, if ok { Status::Pass } else { Status::Fail });
        c.lhs = lhs.to_string();
        c.rhs = rhs.to_string();
        c
    }

    pub fn sides(mut self, lhs: impl ToString, rhs: impl ToString) -> Self {
        self.lhs = lhs.to_string();
        self.rhs = rhs.to_string();
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub seed: Option<u64>,
    pub cases: Vec<Case>,
    pub summary: Summary,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            params: BTreeMap::new(),
            seed: None,
            cases: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn param(mut self, k: &str, v: impl ToString) -> Self {
        self.params.insert(k.to_string(), v.to_string());
        self
    }

    pub fn push(&mut self, c: Case) {
        self.cases.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Case>) {
        self.cases.extend(cs);
    }

    /// Sorts cases by id and recomputes the summary.
    pub fn finish(mut self) -> Self {
        self.cases.sort_by(|a, b| a.id.cmp(&b.id));
        let mut s = Summary::default();
        for c in &self.cases {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skip => s.skip += 1,
            }
        }
        self.summary = s;
        self
    }

    pub fn all_passed(&self) -> bool {
        self.cases.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| c.status == Status::Fail)
    }

    /// Process exit status: number of failures, capped at 125.
    pub fn exit_code(&self) -> i32 {
        self.failures().count().min(125) as i32
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["suite", "id", "status", "lhs", "rhs", "detail"]).unwrap();
        for c in &self.cases {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::Skip => "skip",
            };
            w.write_record([&self.suite, &c.id, status, &c.lhs, &c.rhs, &c.detail]).unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_and_order() {
        let mut r = Report::new("demo").param("M", 3);
        r.push(Case::fail("b", "boom"));
        r.push(Case::pass("a"));
        r.push(Case::skip("c", "depth"));
        let r = r.finish();
        assert_eq!(r.cases[0].id, "a");
        assert_eq!(r.summary, Summary { pass: 1, fail: 1, skip: 1 });
        assert_eq!(r.exit_code(), 1);
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_csv().lines().nth(2).unwrap().starts_with("demo,b,fail"));
    }
}
