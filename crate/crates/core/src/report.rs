//! Machine-readable run reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::edi::EdiTable;

/// One verified identity instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub params: BTreeMap<String, Value>,
    pub pass: bool,
    /// Offending cycle or firing; present exactly when the check failed.
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check { name: name.into(), params: BTreeMap::new(), pass: true, witness: None }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_owned(), value.into());
        self
    }

    pub fn passed(mut self) -> Self {
        self.pass = true;
        self.witness = None;
        self
    }

    pub fn failed(mut self, witness: impl Into<String>) -> Self {
        self.pass = false;
        self.witness = Some(witness.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub level: u32,
    pub members: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub n: u32,
    pub conventions: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub tables: Vec<TableEntry>,
}

impl Report {
    pub fn new(n: u32) -> Self {
        Report { n, conventions: BTreeMap::new(), checks: Vec::new(), tables: Vec::new() }
    }

    pub fn convention(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.conventions.insert(key.to_owned(), value.into());
        self
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn push_table(&mut self, t: &EdiTable) {
        self.tables
            .extend((0..=t.d()).map(|level| TableEntry { level, members: t.members(level).iter().copied().collect() }));
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report values are plain JSON")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Report> {
        serde_json::from_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let mut r = Report::new(5).convention("orientation", "ld");
        r.push(Check::new("ring").param("n", 5).passed());
        r.push(Check::new("ring").param("n", 6).failed("l_0"));
        let t = EdiTable::with_members(5, [(1, 3)]).unwrap();
        r.push_table(&t);
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["n"], 5);
        assert_eq!(v["conventions"]["orientation"], "ld");
        assert_eq!(v["checks"][0]["witness"], Value::Null);
        assert_eq!(v["checks"][1]["witness"], "l_0");
        assert_eq!(v["tables"][1]["members"][0], 3);
        assert_eq!(v.as_object().unwrap().len(), 4);
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
        assert!(!r.all_pass());
    }
}
