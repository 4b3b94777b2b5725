use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub id: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Value>,
}

impl Check {
    pub fn new(id: impl Into<String>, pass: bool) -> Check {
        Check { id: id.into(), pass, witness: None, value: None }
    }

    pub fn witness(mut self, w: impl Into<String>) -> Check {
        self.witness = Some(w.into());
        self
    }

    pub fn value(mut self, v: impl Into<Value>) -> Check {
        self.value = Some(v.into());
        self
    }

    /// Pass when `witness` is None, otherwise fail carrying it.
    pub fn from_witness(id: impl Into<String>, witness: Option<String>) -> Check {
        Check { id: id.into(), pass: witness.is_none(), witness, value: None }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report { command: command.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.command);
        for c in &self.checks {
            s.push_str(&format!("  [{}] {}", if c.pass { "pass" } else { "FAIL" }, c.id));
            if let Some(w) = &c.witness {
                s.push_str(&format!("  witness: {w}"));
            }
            if let Some(v) = &c.value {
                s.push_str(&format!("  value: {v}"));
            }
            s.push('\n');
        }
        s
    }
}
