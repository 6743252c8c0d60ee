//! Serializable results of a count.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Formula,
    Burnside,
    Orbit,
    All,
}

impl Method {
    pub const CONCRETE: [Method; 3] = [Method::Formula, Method::Burnside, Method::Orbit];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Formula => "formula",
            Method::Burnside => "burnside",
            Method::Orbit => "orbit",
            Method::All => "all",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "formula" => Ok(Method::Formula),
            "burnside" => Ok(Method::Burnside),
            "orbit" => Ok(Method::Orbit),
            "all" => Ok(Method::All),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

/// `B(μ)` for one partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionContribution {
    pub partition: Vec<usize>,
    #[serde(with = "decimal")]
    pub value: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub n: usize,
    pub q: u64,
    pub p: u64,
    pub m: u32,
    pub method: Method,
    /// The number of isomorphism classes.
    #[serde(rename = "N", with = "decimal")]
    pub count: BigUint,
    /// Per-partition contributions; empty for direct orbit enumeration.
    #[serde(rename = "B")]
    pub contributions: Vec<PartitionContribution>,
    pub elapsed_ms: u64,
}

impl CountReport {
    pub fn contribution(&self, parts: &[usize]) -> Option<&BigUint> {
        self.contributions
            .iter()
            .find(|c| c.partition == parts)
            .map(|c| &c.value)
    }
}

/// Big integers as decimal strings.
mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse()
            .map_err(|_| D::Error::custom(format!("not a decimal integer: {s:?}")))
    }
}
