//! Named pass/fail results carried by reports.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: String,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool) -> Self {
        Check { name: name.into(), status: if ok { "OK" } else { "FAIL" }.into() }
    }

    /// A gap that is neither a pass nor a failure.
    pub fn partial(name: impl Into<String>) -> Self {
        Check { name: name.into(), status: "PARTIAL".into() }
    }

    /// A check whose search came up empty without refuting the claim.
    pub fn inconclusive(name: impl Into<String>) -> Self {
        Check { name: name.into(), status: "INCONCLUSIVE".into() }
    }

    pub fn ok(&self) -> bool {
        self.status == "OK"
    }

    pub fn failed(&self) -> bool {
        self.status == "FAIL"
    }
}
