use serde::Serialize;

/// A yes/no answer with evidence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict<W> {
    pub holds: bool,
    pub witness: Option<W>,
}

impl<W> Verdict<W> {
    pub fn yes() -> Self {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    pub fn yes_with(w: W) -> Self {
        Verdict {
            holds: true,
            witness: Some(w),
        }
    }

    pub fn no(w: W) -> Self {
        Verdict {
            holds: false,
            witness: Some(w),
        }
    }
}

/// One violated invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: String,
    /// Ids of the offending items (arrows, elements, points; depends on the checker).
    pub ids: Vec<usize>,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, kind: &str, ids: Vec<usize>, message: impl Into<String>) {
        self.violations.push(Violation {
            kind: kind.to_string(),
            ids,
            message: message.into(),
        });
    }

    pub fn has(&self, kind: &str) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    pub fn extend(&mut self, o: ValidationReport) {
        self.violations.extend(o.violations);
    }
}

/// Outcome of a bounded search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TriState<Y, N> {
    Proven { evidence: Y },
    Refuted { evidence: N },
    Unknown { depth: usize },
}

impl<Y, N> TriState<Y, N> {
    pub fn is_proven(&self) -> bool {
        matches!(self, TriState::Proven { .. })
    }
    pub fn is_refuted(&self) -> bool {
        matches!(self, TriState::Refuted { .. })
    }
    pub fn is_unknown(&self) -> bool {
        matches!(self, TriState::Unknown { .. })
    }
    pub fn label(&self) -> &'static str {
        match self {
            TriState::Proven { .. } => "proven",
            TriState::Refuted { .. } => "refuted",
            TriState::Unknown { .. } => "unknown",
        }
    }
}
