use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

/// Outcome of checking one identity by exact expansion.
///
/// `residual` is the exact serialization of `lhs - rhs` ("0" on success).
/// `corrected_form` is filled when a single scalar repairs a failed identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityVerdict {
    pub identity_id: String,
    pub lhs: String,
    pub rhs: String,
    pub status: Status,
    pub residual: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corrected_form: Option<String>,
}

impl IdentityVerdict {
    /// Builds a verdict from a residual; the status follows its vanishing.
    pub fn from_residual(id: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>, residual: Option<String>) -> Self {
        let (status, residual) = match residual {
            None => (Status::Pass, "0".to_string()),
            Some(r) => (Status::Fail, r),
        };
        Self { identity_id: id.into(), lhs: lhs.into(), rhs: rhs.into(), status, residual, corrected_form: None }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn with_correction(mut self, form: impl Into<String>) -> Self {
        self.corrected_form = Some(form.into());
        self
    }
}
