//! Serialized certificate of a non-inner automorphism of order `p`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pcgroup::Group;

pub const CERT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Pipeline,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInfo {
    pub name: String,
    pub order: usize,
    pub prime: u32,
    pub ngens: usize,
}

impl GroupInfo {
    pub fn of(g: &Group) -> Self {
        Self {
            name: g.name().to_string(),
            order: g.order(),
            prime: g.prime(),
            ngens: g.ngens(),
        }
    }
}

/// Images of the free generators `x`, `y` as exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub u: Vec<u32>,
    pub v: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NotRun {
    NotRun,
}

/// `true`/`false` once the exhaustive oracle has been consulted, `"not_run"` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OracleStatus {
    Ran(bool),
    Skipped(NotRun),
}

impl OracleStatus {
    pub const NOT_RUN: OracleStatus = OracleStatus::Skipped(NotRun::NotRun);
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub order_p: bool,
    pub fixes_frattini: bool,
    pub homomorphism: bool,
    pub bijective: bool,
    pub inner_witness: Option<Vec<u32>>,
    pub oracle_confirmed: OracleStatus,
}

impl Checks {
    pub fn is_valid(&self) -> bool {
        self.order_p && self.fixes_frattini && self.homomorphism && self.bijective && self.inner_witness.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonInnerCertificate {
    pub cert_version: u32,
    pub method: Method,
    pub group: GroupInfo,
    pub class: usize,
    pub z2_type: String,
    pub assignment: Option<Assignment>,
    /// Image of each pc generator as an exponent vector.
    pub images: Vec<Vec<u32>>,
    pub checks: Checks,
}

impl NonInnerCertificate {
    pub fn is_valid(&self) -> bool {
        self.checks.is_valid()
    }

    /// Pretty JSON with object keys in sorted order.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("certificate serializes");
        serde_json::to_string_pretty(&value).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cert: Self = serde_json::from_str(text).map_err(|e| Error::MalformedCertificate(e.to_string()))?;
        if cert.cert_version != CERT_VERSION {
            return Err(Error::MalformedCertificate(format!(
                "unsupported cert_version {}",
                cert.cert_version
            )));
        }
        Ok(cert)
    }
}
