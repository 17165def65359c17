//! Outcome of a verification routine: how many cases were checked and the
//! exact witnesses of any that failed.

use serde::Serialize;

/// Failures beyond this count are tallied but not stored.
const MAX_WITNESSES: usize = 16;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub witnesses: Vec<String>,
    pub notes: Vec<String>,
}

impl CheckOutcome {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), cases: 0, failures: 0, witnesses: Vec::new(), notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Records one case; `witness` is only evaluated on failure.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) -> bool {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
        ok
    }

    /// Records an equality case, with both sides in the witness.
    pub fn check_eq<T: PartialEq + std::fmt::Display>(&mut self, got: &T, want: &T, ctx: impl FnOnce() -> String) -> bool {
        self.check(got == want, || format!("{}: got {got}, expected {want}", ctx()))
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    pub fn merge(&mut self, other: CheckOutcome) {
        self.cases += other.cases;
        self.failures += other.failures;
        for w in other.witnesses {
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(format!("[{}] {w}", other.name));
            }
        }
        self.notes.extend(other.notes);
    }
}

impl std::fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        write!(f, "{status} {} ({} cases", self.name, self.cases)?;
        if self.failures > 0 {
            write!(f, ", {} failed", self.failures)?;
        }
        write!(f, ")")?;
        for w in &self.witnesses {
            write!(f, "\n  witness: {w}")?;
        }
        Ok(())
    }
}
