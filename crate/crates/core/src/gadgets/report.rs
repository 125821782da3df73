use std::fmt;

use serde_json::{json, Value};

use crate::exactnum::{BallComplex, Mag};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryStatus {
    Pass,
    /// Consistent with the target but the radius is above the tolerance.
    Imprecise,
    Fail,
}

#[derive(Debug, Clone)]
pub struct IdentityEntry {
    pub label: String,
    /// Human-readable target, e.g. "C1" or "0".
    pub target: String,
    pub computed: BallComplex,
    /// `None` means the target is exactly zero.
    pub expected: Option<BallComplex>,
    pub status: EntryStatus,
}

impl IdentityEntry {
    pub fn check(
        label: impl Into<String>,
        target: impl Into<String>,
        computed: BallComplex,
        expected: Option<BallComplex>,
        tol: Mag,
    ) -> Self {
        let consistent = match &expected {
            None => computed.contains_zero(),
            Some(t) => computed.overlaps(t),
        };
        let wide = computed.radius() >= tol
            || expected.as_ref().is_some_and(|t| t.radius() >= tol);
        let status = match (consistent, wide) {
            (false, false) => EntryStatus::Fail,
            (false, true) | (true, true) => EntryStatus::Imprecise,
            (true, false) => EntryStatus::Pass,
        };
        IdentityEntry { label: label.into(), target: target.into(), computed, expected, status }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "target": self.target,
            "re": self.computed.re_sci(20),
            "im": self.computed.im_sci(20),
            "radius_log2": radius_log2(&self.computed),
            "status": format!("{:?}", self.status).to_lowercase(),
        })
    }
}

pub(crate) fn radius_log2(b: &BallComplex) -> Value {
    let r = b.radius();
    if r.is_zero() {
        Value::Null
    } else {
        json!((r.log2() * 100.0).ceil() / 100.0)
    }
}

#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub name: String,
    pub precision: u32,
    pub entries: Vec<IdentityEntry>,
    /// Extra findings that are not per-entry checks.
    pub notes: Vec<String>,
}

impl IdentityReport {
    pub fn new(name: impl Into<String>, precision: u32) -> Self {
        IdentityReport { name: name.into(), precision, entries: Vec::new(), notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status == EntryStatus::Pass)
    }

    pub fn first_failure(&self) -> Option<&IdentityEntry> {
        self.entries.iter().find(|e| e.status == EntryStatus::Fail)
    }

    pub fn only_imprecise(&self) -> bool {
        !self.passed() && self.first_failure().is_none()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "precision": self.precision,
            "verdict": if self.passed() { "pass" } else { "fail" },
            "entries": self.entries.iter().map(IdentityEntry::to_json).collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} @ {} bits: {}",
            self.name,
            self.precision,
            if self.passed() { "PASS" } else { "FAIL" }
        )?;
        for e in &self.entries {
            writeln!(
                f,
                "  {:<22} {:<10} {:>24} {:>24}i  r=2^{:<8} {:?}",
                e.label,
                e.target,
                e.computed.re_sci(12),
                e.computed.im_sci(12),
                format!("{:.1}", e.computed.radius().log2()),
                e.status
            )?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
