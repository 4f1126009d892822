use std::fmt::Display;

use serde::Serialize;

/// One evaluated identity: its name, the parameters it was instantiated with, and both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub relation: String,
    pub params: Vec<(String, String)>,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

impl Instance {
    pub fn new(relation: impl Into<String>) -> Self {
        Self { relation: relation.into(), params: Vec::new(), pass: true, lhs: String::new(), rhs: String::new() }
    }

    pub fn param(mut self, name: &str, value: impl Display) -> Self {
        self.params.push((name.to_string(), value.to_string()));
        self
    }

    /// Records both sides and passes iff they are equal.
    pub fn compare<T: PartialEq + Display>(mut self, lhs: &T, rhs: &T) -> Self {
        self.pass = lhs == rhs;
        self.lhs = lhs.to_string();
        self.rhs = rhs.to_string();
        self
    }

    pub fn check(mut self, ok: bool, lhs: impl Display, rhs: impl Display) -> Self {
        self.pass = ok;
        self.lhs = lhs.to_string();
        self.rhs = rhs.to_string();
        self
    }
}

/// All instances of a suite, in a deterministic order.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub suite: String,
    pub instances: Vec<Instance>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Self { suite: suite.into(), ..Self::default() }
    }

    pub fn pass(&self) -> bool {
        self.instances.iter().all(|i| i.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Instance> {
        self.instances.iter().filter(|i| !i.pass)
    }

    pub fn extend(&mut self, other: Report) {
        self.instances.extend(other.instances);
        self.warnings.extend(other.warnings);
    }

    pub fn push(&mut self, i: Instance) {
        self.instances.push(i);
    }

    /// Marks an empty report as a vacuous pass.
    pub fn finish(mut self) -> Self {
        if self.instances.is_empty() {
            self.warnings.push("empty sample grid: vacuous pass".into());
        }
        self
    }
}
