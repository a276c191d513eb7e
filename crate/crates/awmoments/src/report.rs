use serde::Serialize;

/// Outcome of a single verification item.
///
/// `ConjectureViolation` is reserved for scans of open conjectures: it is
/// reported (with a witness) but never fails a build, because disproving a
/// conjecture is a finding, not a bug.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "CONJECTURE-VIOLATION")]
    ConjectureViolation,
}

/// Structured pass/fail record for one identity, property, or conjecture
/// scan. Wall-clock timing is kept out of the serialized form so that report
/// files are byte-identical across runs; callers that want timing read the
/// field directly.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip)]
    pub millis: Option<u128>,
}

impl VerificationReport {
    pub fn pass(id: impl Into<String>) -> VerificationReport {
        VerificationReport {
            id: id.into(),
            status: Status::Pass,
            witness: None,
            millis: None,
        }
    }

    pub fn fail(id: impl Into<String>, witness: impl Into<String>) -> VerificationReport {
        VerificationReport {
            id: id.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
            millis: None,
        }
    }

    pub fn violation(id: impl Into<String>, witness: impl Into<String>) -> VerificationReport {
        VerificationReport {
            id: id.into(),
            status: Status::ConjectureViolation,
            witness: Some(witness.into()),
            millis: None,
        }
    }

    /// Pass/fail from a boolean, with the witness computed only on failure.
    pub fn check(
        id: impl Into<String>,
        ok: bool,
        witness: impl FnOnce() -> String,
    ) -> VerificationReport {
        if ok {
            VerificationReport::pass(id)
        } else {
            VerificationReport::fail(id, witness())
        }
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serialization_is_stable_and_omits_timing() {
        let mut r = VerificationReport::fail("x", "w");
        r.millis = Some(123);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"id":"x","status":"FAIL","witness":"w"}"#);
        let p = VerificationReport::pass("y");
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"id":"y","status":"PASS"}"#
        );
    }
}
