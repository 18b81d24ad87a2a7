use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// One verified invariant: measured residual against its tolerance, plus
/// whatever witness data localizes a failure.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub witness: serde_json::Value,
}

impl CheckEntry {
    pub fn new(name: &str, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            passed: residual <= tolerance,
            residual,
            tolerance,
            witness: serde_json::Value::Null,
        }
    }

    pub fn with_witness(mut self, witness: serde_json::Value) -> Self {
        self.witness = witness;
        self
    }

    pub fn failed(name: &str, witness: serde_json::Value) -> Self {
        Self {
            name: name.to_string(),
            passed: false,
            residual: f64::INFINITY,
            tolerance: 0.0,
            witness,
        }
    }
}

/// Reproducibility data recorded alongside the checks.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Provenance {
    pub package_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_hash: Option<String>,
    /// Sampling densities by role (directions, curve steps, grid points...).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sample_counts: BTreeMap<String, u64>,
}

impl Provenance {
    pub fn new() -> Self {
        Self {
            package_version: env!("CARGO_PKG_VERSION").to_string(),
            input_hash: None,
            sample_counts: BTreeMap::new(),
        }
    }

    pub fn with_input(mut self, bytes: &[u8]) -> Self {
        self.input_hash = Some(sha256_hex(bytes));
        self
    }

    pub fn record_count(mut self, role: &str, count: u64) -> Self {
        self.sample_counts.insert(role.to_string(), count);
        self
    }
}

/// A structured pass/fail record over a set of invariants. Identical inputs
/// and configuration serialize to bit-identical JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub provenance: Provenance,
    pub checks: Vec<CheckEntry>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn new(provenance: Provenance) -> Self {
        Self {
            schema_version: REPORT_SCHEMA_VERSION,
            provenance,
            checks: Vec::new(),
            passed: true,
        }
    }

    pub fn push(&mut self, entry: CheckEntry) {
        self.passed &= entry.passed;
        self.checks.push(entry);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> crate::error::Result<Self> {
        serde_json::from_str(s).map_err(|e| crate::error::Error::Parse(e.to_string()))
    }

    /// One line per check, human-readable.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {:<28} residual {:.3e} tolerance {:.3e}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.residual,
                c.tolerance
            ));
        }
        out.push_str(&format!(
            "overall: {}\n",
            if self.passed { "PASS" } else { "FAIL" }
        ));
        out
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trips_and_is_deterministic() {
        let mut r = VerificationReport::new(
            Provenance::new()
                .with_input(b"fixture")
                .record_count("directions", 2048),
        );
        r.push(CheckEntry::new("width", 1e-9, 1e-6));
        r.push(
            CheckEntry::new("convexity", 2e-3, 1e-6)
                .with_witness(serde_json::json!({"point": [1.0, 2.0]})),
        );
        assert!(!r.passed);
        let a = r.to_json();
        let b = VerificationReport::from_json(&a).unwrap().to_json();
        assert_eq!(a, b);
        assert!(r.summary().contains("FAIL"));
    }

    #[test]
    fn hash_is_stable() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
