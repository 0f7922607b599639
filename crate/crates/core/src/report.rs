//! The unit of output for every check.

use serde::ser::{Serialize, Serializer};
use serde::Deserialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

/// Measured residual of a check. Exact checks report `exact-0` on success.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Residual {
    ExactZero,
    Value(f64),
}

impl Residual {
    pub fn value(&self) -> f64 {
        match self {
            Residual::ExactZero => 0.0,
            Residual::Value(v) => *v,
        }
    }
}

impl Serialize for Residual {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Residual::ExactZero => s.serialize_str("exact-0"),
            Residual::Value(v) if v.is_finite() => s.serialize_f64(*v),
            Residual::Value(v) if v.is_nan() => s.serialize_str("nan"),
            Residual::Value(_) => s.serialize_str("inf"),
        }
    }
}

impl std::fmt::Display for Residual {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Residual::ExactZero => f.write_str("exact-0"),
            Residual::Value(v) => write!(f, "{v:e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub status: Status,
    pub residual: Residual,
    pub tolerance: f64,
    pub samples: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub note: String,
    pub known_erratum: bool,
}

impl VerificationReport {
    /// Float check: passes iff `residual <= tolerance`.
    pub fn measured(check: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        let status = if residual <= tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            check: check.into(),
            status,
            residual: Residual::Value(residual),
            tolerance,
            samples: 1,
            seed: None,
            note: String::new(),
            known_erratum: false,
        }
    }

    /// Exact check: `residual` is the largest violation magnitude, or `None` when
    /// every identity held exactly.
    pub fn exact(check: impl Into<String>, residual: Option<f64>) -> Self {
        let (status, residual) = match residual {
            None => (Status::Pass, Residual::ExactZero),
            Some(r) => (Status::Fail, Residual::Value(r)),
        };
        Self {
            check: check.into(),
            status,
            residual,
            tolerance: 0.0,
            samples: 1,
            seed: None,
            note: String::new(),
            known_erratum: false,
        }
    }

    /// Boolean verdict with no meaningful residual.
    pub fn verdict(check: impl Into<String>, ok: bool, violations: u64) -> Self {
        let mut r = Self::exact(check, (!ok).then_some(violations as f64));
        if ok {
            r.residual = Residual::Value(0.0);
        }
        r
    }

    pub fn not_applicable(check: impl Into<String>, note: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            status: Status::NotApplicable,
            residual: Residual::Value(0.0),
            tolerance: 0.0,
            samples: 0,
            seed: None,
            note: note.into(),
            known_erratum: false,
        }
    }

    pub fn with_samples(mut self, samples: u64) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        let note = note.into();
        if self.note.is_empty() {
            self.note = note;
        } else if !note.is_empty() {
            self.note = format!("{}; {}", self.note, note);
        }
        self
    }

    pub fn renamed(mut self, check: impl Into<String>) -> Self {
        self.check = check.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}
